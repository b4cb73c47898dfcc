"""Dynamical operations on truncated series.

Involutivity, compositional square roots with their free parameters,
linearization of hyperbolic series, the Lubin normal-form check and
random reversible series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ
from sympy.polys.rings import ring

from . import _kernels as K
from .randgen import random_series, seeded_rng
from .series import (
    DEFAULT_ORDER,
    SeriesError,
    TruncatedSeries,
    comp_inverse,
    comp_power,
    compose,
    conjugate,
    deviation_index,
)


class ResonantMultiplier(SeriesError):
    pass


class NotCommuting(SeriesError):
    pass


def is_involutive(S: TruncatedSeries) -> bool:
    return comp_power(S, 2) == TruncatedSeries.identity(S.order)


def commutes(S: TruncatedSeries, T: TruncatedSeries) -> bool:
    return compose(S, T) == compose(T, S)


def square_deviation(S: TruncatedSeries) -> int | None:
    """Deviation index of ``S o S`` for a series with multiplier -1.

    The first nonzero term after ``X`` of such a square always sits at an
    odd exponent; the randomized suites assert this.
    """
    if S[1] != -1:
        raise SeriesError(f"square_deviation needs multiplier -1, got {S[1]}")
    return deviation_index(comp_power(S, 2))


# -- square roots -------------------------------------------------------------

DETERMINED = "determined"
FREE = "free"
CONSTRAINT = "constraint"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SquareRootFamily:
    """All ``G`` with ``G o G = base`` and multiplier ``root_multiplier``.

    ``labels[n - 2]`` classifies the ``X^n`` equation: ``determined`` (g_n
    solved for), ``free`` (the equation is ``0 = 0``), ``constraint`` (it
    pinned an earlier free coefficient; g_n itself is then free) or
    ``inconsistent``.  ``free_indices`` lists the coefficients that remain
    independent parameters once all constraints are applied.
    """

    base: TruncatedSeries
    root_multiplier: Fraction
    labels: tuple
    free_indices: tuple
    witness: TruncatedSeries | None
    _general: tuple = field(repr=False, default=())
    _gens: tuple = field(repr=False, default=())

    @property
    def kind(self) -> str:
        if self.witness is None:
            return "empty"
        return "family" if self.free_indices else "unique"

    @property
    def is_unique(self) -> bool:
        return self.kind == "unique"

    def member(self, values=None) -> TruncatedSeries:
        """The root whose free coefficients take ``values`` (default 0)."""
        if self.witness is None:
            raise SeriesError("square-root family is empty")
        if not self._gens:
            return self.witness
        values = values or {}
        unknown = set(values) - set(self.free_indices)
        if unknown:
            raise SeriesError(f"indices {sorted(unknown)} are not free")
        return _evaluate(self._general, self._gens, values, self.base.order)

    def contains(self, G: TruncatedSeries) -> bool:
        if self.witness is None or G.order != self.base.order:
            return False
        return self.member({n: G[n] for n in self.free_indices}) == G


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _evaluate(general, gens, values, order) -> TruncatedSeries:
    point = [(gen, QQ(values.get(n, 0))) for n, gen in gens]
    return TruncatedSeries([_to_fraction(p.evaluate(point)) for p in general], order)


def comp_square_root(S: TruncatedSeries, mu) -> SquareRootFamily:
    """Solve ``G o G = S`` coefficient by coefficient with ``G[1] = mu``.

    The ``X^n`` coefficient of ``G o G`` is ``(mu + mu^n) g_n`` plus terms in
    lower coefficients.  Only ``mu = -1`` with ``n`` even makes the factor
    vanish; those coefficients are carried as polynomial parameters so that
    a later constraint can be solved for the parameter it pins.
    """
    if mu * mu != S[1]:
        raise SeriesError(f"root multiplier {mu} does not square to {S[1]}")
    if K.is_exact(mu) and Fraction(mu) == -1:
        if not S.is_exact:
            raise SeriesError("roots with multiplier -1 need exact coefficients")
        return _symbolic_root(S)
    return _plain_root(S, mu)


def _plain_root(S: TruncatedSeries, mu) -> SquareRootFamily:
    s = S.padded()
    if S.is_exact:
        mu = Fraction(mu)
    else:
        mu, s = K.to_mpf(mu), [K.to_mpf(c) for c in s]
    n_max = S.order
    table = K.PowerTable(mu)
    for n in range(2, n_max + 1):
        powers = table.advance(n)
        lower = 0
        for k in range(2, n):
            if table.g[k]:
                lower = lower + table.g[k] * powers[k]
        table.set(n, (s[n] - lower) / (mu + mu**n))
    root = TruncatedSeries(table.g[1:], n_max)
    labels = (DETERMINED,) * (n_max - 1)
    return SquareRootFamily(S, mu, labels, (), root)


def _symbolic_root(S: TruncatedSeries) -> SquareRootFamily:
    n_max = S.order
    names = [f"t{n}" for n in range(2, n_max + 1, 2)] or ["t2"]
    R, *gens = ring(",".join(names), QQ)
    gen_of = {int(str(g)[1:]): g for g in gens}
    s = [R(QQ(c.numerator, c.denominator)) for c in S.padded()]
    g = [R(0), R(-1)]
    labels = []
    free = []

    def rebuild(upto):
        table = K.PowerTable(g[1])
        for m in range(2, upto):
            table.advance(m)
            table.set(m, g[m])
        return table

    table = rebuild(2)
    for n in range(2, n_max + 1):
        powers = table.advance(n)
        lower = R(0)
        for k in range(2, n):
            if g[k]:
                lower = lower + g[k] * powers[k]
        factor = -1 + (-1) ** n
        residual = s[n] - lower
        if factor:
            g.append(residual * QQ(1, factor))
            labels.append(DETERMINED)
            table.set(n, g[n])
            continue
        if residual:
            pinned = _solve_linear(residual, free, gen_of)
            if pinned is None:
                labels.append(INCONSISTENT)
                labels.extend([INCONSISTENT] * (n_max - n))
                return SquareRootFamily(S, Fraction(-1), tuple(labels), (), None)
            index, value = pinned
            g = [c.compose(gen_of[index], value) for c in g]
            free.remove(index)
            labels.append(CONSTRAINT)
            table = rebuild(n)
            table.advance(n)
        else:
            labels.append(FREE)
        g.append(gen_of[n])
        free.append(n)
        table.set(n, g[n])

    general = tuple(g[1:])
    gen_items = tuple((n, gen_of[n]) for n in sorted(gen_of))
    witness = _evaluate(general, gen_items, {}, n_max)
    return SquareRootFamily(S, Fraction(-1), tuple(labels), tuple(free), witness, general, gen_items)


def _solve_linear(residual, free, gen_of):
    """Solve ``residual = 0`` for one free parameter it contains linearly.

    Returns ``(index, value)`` or None when the equation has no solution.
    The parameter must enter with a constant nonzero coefficient.
    """
    if residual.is_ground:
        return None
    for index in free:
        gen = gen_of[index]
        if residual.degree(gen) != 1:
            continue
        coeff = residual.coeff_wrt(gen, 1)
        if not coeff.is_ground:
            continue
        rest = residual - coeff * gen
        return index, rest * QQ(-1) * (1 / coeff.LC)
    raise SeriesError(f"square-root constraint {residual} = 0 is not linear in a free coefficient")


# -- linearization and normal forms --------------------------------------------


def koenigs_linearize(S: TruncatedSeries) -> TruncatedSeries:
    """``W = X + ...`` with ``conjugate(S, W) = lambda X`` for hyperbolic ``S``.

    Solves ``S o W = W o (lambda X)``; the ``X^n`` equation has factor
    ``lambda^n - lambda``, which never vanishes when ``|lambda| != 1``.
    """
    lam = S[1]
    if lam == 0:
        raise ResonantMultiplier("zero multiplier")
    if abs(lam) == 1:
        raise ResonantMultiplier(f"multiplier {lam} lies on the unit circle")
    f = S.padded()
    one = lam / lam
    table = K.PowerTable(one)
    for n in range(2, S.order + 1):
        powers = table.advance(n)
        acc = 0
        for k, p in powers.items():
            if f[k]:
                acc = acc + f[k] * p
        table.set(n, acc / (lam**n - lam))
    return TruncatedSeries(table.g[1:], S.order)


def lubin_form(Q: TruncatedSeries, S: TruncatedSeries):
    """``mu`` with ``Q = X + mu X^(p+1) mod X^(p+2)``, where ``p+1`` is the deviation of ``S``.

    Returns None when ``Q`` does not have that shape, or has ``mu = 0``
    without being ``X``; both contradict the expected form for a series
    commuting with ``S``.
    """
    if S[1] != 1 or Q[1] != 1:
        raise SeriesError("lubin_form needs multiplier 1 for both series")
    dev = deviation_index(S)
    if dev is None:
        raise SeriesError("S is X to this order; its deviation is undefined")
    if not commutes(Q, S):
        raise NotCommuting("Q does not commute with S")
    if any(Q[m] != 0 for m in range(2, dev)):
        return None
    mu = Q[dev]
    if mu == 0 and Q != TruncatedSeries.identity(Q.order):
        return None
    return mu


def random_involution(rng, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``W^-1 o (-X) o W`` for a random invertible ``W``."""
    W = random_series(rng, order)
    return conjugate(TruncatedSeries.linear(-1, order), W)


def random_reversible(seed: int, order: int = DEFAULT_ORDER, with_reverser: bool = False):
    """Product of two random formal involutions; it is reversed by the first."""
    rng = seeded_rng(seed)
    tau1 = random_involution(rng, order)
    tau2 = random_involution(rng, order)
    Q = compose(tau1, tau2)
    return (Q, tau1) if with_reverser else Q
