"""Truncated formal power series under composition.

A :class:`TruncatedSeries` of order ``N`` stands for ``c1*X + ... + cN*X^N``
modulo ``X^(N+1)``.  There is no constant term, so every series fixes 0 and
composition is always defined.  Coefficients are exact ``Fraction`` values;
jets taken at irrational points carry ``mpmath.mpf`` coefficients instead
(see :mod:`diffconj.jets`), and every operation here accepts either.

    >>> S = TruncatedSeries([1, 1], order=3)
    >>> comp_inverse(S)
    TruncatedSeries([1, -1, 2])
"""

from __future__ import annotations

import re
from fractions import Fraction

import mpmath

from . import _kernels as K

DEFAULT_ORDER = 16


class SeriesError(ValueError):
    pass


class OrderMismatch(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class TruncatedSeries:
    """Immutable series ``c1 X + ... + cN X^N`` known mod ``X^(N+1)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise SeriesError("order must be a positive integer")
        coeffs = coeffs[:order] + [0] * (order - len(coeffs))
        self._c = tuple(K.unify(coeffs))

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def linear(cls, a, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([a], order)

    @classmethod
    def from_literal(cls, text: str, order: int | None = None) -> "TruncatedSeries":
        return cls(parse_literal(text), order)

    @property
    def order(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def is_exact(self) -> bool:
        return isinstance(self._c[0], Fraction)

    def __getitem__(self, k: int):
        """Coefficient of ``X^k`` (``k >= 1``); zero beyond the order is not known."""
        if k < 1 or k > self.order:
            raise IndexError(f"coefficient index {k} outside 1..{self.order}")
        return self._c[k - 1]

    def padded(self):
        """Coefficient list indexed by exponent, constant included."""
        return [0] + list(self._c)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self._c[:order], order)

    def to_mpf(self) -> "TruncatedSeries":
        return TruncatedSeries([K.to_mpf(c) for c in self._c])

    def to_literal(self) -> str:
        return format_literal(self._c)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"TruncatedSeries({self.to_literal()})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self._c, start=1):
            if c == 0:
                continue
            mono = "X" if k == 1 else f"X^{k}"
            terms.append(f"{_fmt(c)}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __neg__(self):
        return TruncatedSeries([-c for c in self._c])

    def __add__(self, other):
        _same_order(self, other)
        a, b = _pair(self, other)
        return TruncatedSeries([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        _same_order(self, other)
        a, b = _pair(self, other)
        return TruncatedSeries([x - y for x, y in zip(a, b)])

    def scale(self, factor) -> "TruncatedSeries":
        c = list(self._c)
        if isinstance(c[0], Fraction) and K.is_exact(factor):
            factor = Fraction(factor)
        else:
            c, factor = [K.to_mpf(x) for x in c], K.to_mpf(factor)
        return TruncatedSeries([x * factor for x in c])

    def __matmul__(self, other):
        return compose(self, other)


def _same_order(s: TruncatedSeries, t: TruncatedSeries) -> None:
    if s.order != t.order:
        raise OrderMismatch(f"orders differ: {s.order} vs {t.order}")


def _pair(s: TruncatedSeries, t: TruncatedSeries):
    if s.is_exact == t.is_exact:
        return s._c, t._c
    return [K.to_mpf(c) for c in s._c], [K.to_mpf(c) for c in t._c]


def compose(S: TruncatedSeries, T: TruncatedSeries) -> TruncatedSeries:
    """``S o T`` mod ``X^(N+1)``."""
    _same_order(S, T)
    a, b = _pair(S, T)
    n = S.order
    out = K.compose([0, *a], [0, *b], n)
    return TruncatedSeries(out[1:], n)


def multiplier(S: TruncatedSeries):
    return S[1]


def comp_inverse(S: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by a triangular solve of ``S o G = X``."""
    s = S.coeffs
    if s[0] == 0:
        raise NotInvertible("series with zero multiplier has no compositional inverse")
    n = S.order
    one = s[0] / s[0]
    table = K.PowerTable(one / s[0])
    for m in range(2, n + 1):
        powers = table.advance(m)
        acc = 0
        for k, p in powers.items():
            if s[k - 1]:
                acc = acc + s[k - 1] * p
        table.set(m, -acc / s[0])
    return TruncatedSeries(table.g[1:], n)


def comp_power(S: TruncatedSeries, k: int) -> TruncatedSeries:
    """``k``-fold composition, with ``k < 0`` meaning powers of the inverse."""
    if k < 0:
        return comp_power(comp_inverse(S), -k)
    result = TruncatedSeries.identity(S.order)
    base = S
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def conjugate(S: TruncatedSeries, W: TruncatedSeries) -> TruncatedSeries:
    """``W^-1 o S o W``, the series analogue of ``g^h``."""
    return compose(comp_inverse(W), compose(S, W))


def deviation_index(S: TruncatedSeries) -> int | None:
    """Least ``m >= 2`` with a nonzero coefficient, or None."""
    for m in range(2, S.order + 1):
        if S[m] != 0:
            return m
    return None


def equals_mod(S: TruncatedSeries, T: TruncatedSeries, m: int) -> bool:
    """True iff the coefficients of ``X^1 .. X^m`` agree."""
    if m > min(S.order, T.order):
        raise OrderMismatch(f"cannot compare through X^{m} at orders {S.order}, {T.order}")
    a, b = _pair(S, T)
    return all(x == y for x, y in zip(a[:m], b[:m]))


def max_gap(S: TruncatedSeries, T: TruncatedSeries):
    """Largest coefficient difference, as an exact value when both are exact."""
    _same_order(S, T)
    a, b = _pair(S, T)
    return max(abs(x - y) for x, y in zip(a, b))


_LITERAL = re.compile(r"^\s*\[(.*)\]\s*$", re.S)


def parse_literal(text: str) -> list:
    """Parse ``[c1, c2, ...]`` with integers, ``p/q`` or decimals, exactly."""
    m = _LITERAL.match(text)
    if not m:
        raise SeriesError(f"series literal must look like [c1, c2, ...]: {text!r}")
    body = m.group(1).strip()
    if not body:
        raise SeriesError("empty series literal")
    out = []
    for item in body.split(","):
        item = item.strip().replace(" ", "")
        try:
            out.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            raise SeriesError(f"bad coefficient {item!r} in series literal") from None
    return out


def _fmt(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return mpmath.nstr(c, mpmath.mp.dps)


def format_literal(coeffs) -> str:
    return "[" + ", ".join(_fmt(c) for c in coeffs) + "]"
