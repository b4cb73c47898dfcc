"""Independent oracles: grid checks, brute-force square roots, finite differences.

Nothing here calls the square-root solver, the power tables or the jet
recurrences it is meant to cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath

from . import _kernels as K
from .expr import (
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Pow,
    Sub,
    X,
    DomainError,
    evaluate,
)
from .jets import taylor_jet
from .series import TruncatedSeries

DEFAULT_INTERVAL = (Fraction(-2), Fraction(2))
DEFAULT_POINTS = 1001
CERTIFICATE_TOLERANCE = mpmath.mpf("1e-30")
FD_TOLERANCE = mpmath.mpf("1e-20")
SAMPLE_VALUES = tuple(Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))


@dataclass(frozen=True)
class GridCheckReport:
    interval: tuple
    points: int
    max_residual: object
    argmax: object
    tolerance: object

    @property
    def passed(self) -> bool:
        return K.le(self.max_residual, self.tolerance)

    def to_dict(self) -> dict:
        return {
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "points": self.points,
            "max_residual": _num(self.max_residual),
            "argmax": _num(self.argmax),
            "tolerance": _num(self.tolerance),
            "pass": self.passed,
        }


def _num(v) -> str:
    if K.is_exact(v):
        return str(Fraction(v))
    return mpmath.nstr(v, 8)


def grid(interval=DEFAULT_INTERVAL, points: int = DEFAULT_POINTS) -> list:
    """Equally spaced exact points, endpoints included."""
    if points < 2:
        raise ValueError("a grid needs at least two points")
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if not a < b:
        raise ValueError("interval must have a < b")
    step = (b - a) / (points - 1)
    return [a + i * step for i in range(points)]


def _caller(m):
    if isinstance(m, Expr):
        return lambda x: evaluate(m, x)
    return m


def _gap(u, v):
    if K.is_exact(u) and K.is_exact(v):
        return abs(Fraction(u) - Fraction(v))
    return abs(K.to_mpf(u) - K.to_mpf(v))


def check_conjugacy_numeric(
    f,
    g,
    h,
    interval=DEFAULT_INTERVAL,
    n_points: int = DEFAULT_POINTS,
    tol=CERTIFICATE_TOLERANCE,
) -> GridCheckReport:
    """Sup over the grid of ``|h(f(x)) - g(h(x))|``.

    ``f``, ``g`` and ``h`` are expressions or plain callables.  ``h`` must be
    strictly monotone on the grid.
    """
    f, g, h = _caller(f), _caller(g), _caller(h)
    xs = grid(interval, n_points)
    hx = [h(x) for x in xs]
    steps = [K.to_mpf(b) - K.to_mpf(a) for a, b in zip(hx, hx[1:])]
    if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
        raise DomainError("conjugator is not strictly monotone on the grid")
    worst, where = Fraction(0), xs[0]
    for x, y in zip(xs, hx):
        r = _gap(h(f(x)), g(y))
        if not K.le(r, worst):
            worst, where = r, x
    return GridCheckReport((xs[0], xs[-1]), n_points, worst, where, tol)


def check_maps_close(f, g, interval=DEFAULT_INTERVAL, n_points: int = 201, tol=CERTIFICATE_TOLERANCE):
    """Sup over the grid of ``|f(x) - g(x)|``."""
    f, g = _caller(f), _caller(g)
    xs = grid(interval, n_points)
    worst, where = Fraction(0), xs[0]
    for x in xs:
        r = _gap(f(x), g(x))
        if not K.le(r, worst):
            worst, where = r, x
    return GridCheckReport((xs[0], xs[-1]), n_points, worst, where, tol)


# -- brute-force square roots ---------------------------------------------------


def _naive_self_compose(g: list, n: int) -> list:
    """``G o G`` by expanding every power of ``G`` with schoolbook products."""
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(0)] * (n + 1)
    power[0] = Fraction(1)
    for k in range(1, n + 1):
        nxt = [Fraction(0)] * (n + 1)
        for i, a in enumerate(power):
            if a:
                for j in range(1, n + 1 - i):
                    nxt[i + j] += a * g[j]
        power = nxt
        if g[k]:
            for m in range(n + 1):
                out[m] += g[k] * power[m]
    return out


@dataclass(frozen=True)
class BruteForceRoots:
    roots: tuple
    labels: tuple
    free_indices: tuple


def brute_force_square_roots(S: TruncatedSeries, mu, samples=SAMPLE_VALUES) -> list:
    """Every root of ``G o G = S`` with ``G[1] = mu`` whose free coefficients lie in ``samples``."""
    return list(brute_force_classify(S, mu, samples).roots)


def brute_force_classify(S: TruncatedSeries, mu, samples=SAMPLE_VALUES) -> BruteForceRoots:
    """Branch over sampled values wherever the ``X^n`` equation leaves ``g_n`` free.

    Each equation is affine in ``g_n``; its slope and value are read off by
    evaluating the composition at ``g_n = 0`` and ``g_n = 1``.
    """
    n_max = S.order
    if n_max > 8:
        raise ValueError("brute force is limited to order 8")
    s = [Fraction(0)] + [Fraction(c) for c in S.coeffs]
    mu = Fraction(mu)
    branches = [[Fraction(0), mu] + [Fraction(0)] * (n_max - 1)]
    labels = []
    for n in range(2, n_max + 1):
        survivors = []
        kinds = set()
        for g in branches:
            at0 = _naive_self_compose(g, n)[n]
            g1 = list(g)
            g1[n] = Fraction(1)
            slope = _naive_self_compose(g1, n)[n] - at0
            if slope:
                g1[n] = (s[n] - at0) / slope
                survivors.append(g1)
                kinds.add("determined")
            elif at0 == s[n]:
                for v in samples:
                    g1 = list(g)
                    g1[n] = v
                    survivors.append(g1)
                kinds.add("free")
            else:
                kinds.add("dead")
        if "determined" in kinds:
            labels.append("determined")
        elif not survivors:
            labels.append("inconsistent")
        elif "dead" in kinds:
            labels.append("constraint")
        else:
            labels.append("free")
        branches = survivors
        if not branches:
            labels.extend(["inconsistent"] * (n_max - n))
            break
    roots = tuple(TruncatedSeries(g[1:], n_max) for g in branches)
    free = []
    for n in range(2, n_max + 1):
        if labels[n - 2] in ("free", "constraint"):
            values = {r[n] for r in roots}
            if values >= set(samples):
                free.append(n)
    return BruteForceRoots(roots, tuple(labels), tuple(free))


def family_agrees(family, S: TruncatedSeries, mu, samples=SAMPLE_VALUES) -> tuple:
    """Compare a square-root family with the brute-force oracle.

    Returns ``(ok, reason)``.  Checked: per-index labels, free indices,
    every brute-force root lies in the family, and every sampled member of
    the family is a brute-force root.
    """
    oracle = brute_force_classify(S, mu, samples)
    if tuple(family.labels) != oracle.labels:
        return False, f"labels {family.labels} vs oracle {oracle.labels}"
    if tuple(family.free_indices) != oracle.free_indices:
        return False, f"free indices {family.free_indices} vs oracle {oracle.free_indices}"
    if family.witness is None:
        if oracle.roots:
            return False, "empty family but the oracle found roots"
        return True, ""
    for root in oracle.roots:
        if not family.contains(root):
            return False, f"oracle root {root.to_literal()} not in family"
    found = set(oracle.roots)
    for values in product(samples, repeat=len(family.free_indices)):
        member = family.member(dict(zip(family.free_indices, values)))
        if member not in found:
            return False, f"family member {member.to_literal()} missing from oracle"
    return True, ""


# -- finite differences -----------------------------------------------------------


def jet_vs_finite_difference(e: Expr, p, order: int = 4, tol=FD_TOLERANCE) -> GridCheckReport:
    """Compare jet coefficients 1..order with central differences of ``e`` at ``p``.

    The residual is ``|jet_k - d^k e(p) / k!| / max(1, |jet_k|)``; ``argmax``
    is the worst ``k``.
    """
    if not 1 <= order <= 4:
        raise ValueError("finite-difference order must be between 1 and 4")
    jet = taylor_jet(e, p, order)
    x0 = K.to_mpf(p)
    worst, where = mpmath.mpf(0), 1
    for k in range(1, order + 1):
        fd = mpmath.diff(lambda t: K.to_mpf(evaluate(e, t)), x0, k) / math.factorial(k)
        c = K.to_mpf(jet[k])
        r = abs(c - fd) / max(1, abs(c))
        if not K.le(r, worst):
            worst, where = r, k
    return GridCheckReport((p, p), order, worst, where, tol)


def random_expression(rng, depth: int = 3) -> Expr:
    """Random expression that is smooth on ``[-1, 1]``.

    Denominators are kept of the form ``2 + u^2`` and logarithms are applied
    to ``2 + u^2`` (or ``cosh u``), so no sampled point is singular.
    """
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.7:
            return X
        return Const(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    kind = rng.choice(("add", "sub", "mul", "div", "pow", "exp", "sinh", "cosh", "tanh", "arctan", "log"))
    a = random_expression(rng, depth - 1)
    if kind in ("add", "sub", "mul"):
        b = random_expression(rng, depth - 1)
        return {"add": Add, "sub": Sub, "mul": Mul}[kind](a, b)
    if kind == "div":
        return Div(random_expression(rng, depth - 1), Add(Const(2), Pow(a, 2)))
    if kind == "pow":
        return Pow(a, rng.randint(2, 3))
    if kind == "exp":
        # keep arguments modest so coefficients stay on a human scale
        return Func("exp", Div(a, Add(Const(2), Pow(a, 2))))
    if kind == "log":
        return Func("log", Add(Const(2), Pow(a, 2)) if rng.random() < 0.5 else Func("cosh", a))
    return Func(kind, a)
