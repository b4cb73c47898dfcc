"""Coefficient-list kernels shared by the series, jet and root solvers.

Lists are indexed by exponent (``a[0]`` is the constant term) and hold any
ring elements that support ``+``, ``-`` and ``*``: ``Fraction``, ``mpf`` or
sparse polynomials from :mod:`sympy.polys.rings`.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def to_mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


DEFAULT_PRECISION = 50
# digits of slack between working precision and "numerically equal"
GUARD_DIGITS = 10


def near_zero_tolerance():
    """``10**-(dps - 10)``: 1e-40 at the default 50 digits."""
    return mpmath.mpf(10) ** (GUARD_DIGITS - mpmath.mp.dps)


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def le(a, b) -> bool:
    """``a <= b`` across Fraction and mpf (they do not compare directly)."""
    if is_exact(a) and is_exact(b):
        return a <= b
    return to_mpf(a) <= to_mpf(b)


def unify(values):
    """Return ``values`` as all-Fraction, or all-mpf if any entry is inexact."""
    values = list(values)
    if all(is_exact(v) for v in values):
        return [Fraction(v) for v in values]
    return [to_mpf(v) for v in values]


def mul(a, b, n):
    """Product of two coefficient lists truncated after exponent ``n``."""
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        for j in range(min(len(b), n + 1 - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def compose(outer, inner, n):
    """Horner substitution ``outer(inner)`` truncated after exponent ``n``.

    ``inner[0]`` must be zero; the constant of the result is ``outer[0]``.
    """
    acc = [0] * (n + 1)
    acc[0] = outer[n] if n < len(outer) else 0
    for k in range(min(n, len(outer)) - 1, -1, -1):
        acc = mul(acc, inner, n)
        acc[0] = acc[0] + outer[k]
    return acc


class PowerTable:
    """Powers ``G^k`` of a series built one coefficient at a time.

    Solvers that fix ``g_n`` from the ``X^n`` coefficient of an identity
    need ``[X^n] G^k`` for ``k >= 2``; those only involve ``g_1..g_{n-1}``.
    """

    def __init__(self, g1):
        self.g = [0, g1]
        # rows[k][m] = [X^m] G^k
        self.rows = {1: [0, g1]}

    def advance(self, n):
        """Return ``{k: [X^n] G^k}`` for ``2 <= k <= n``; requires ``len(g) == n``."""
        g = self.g
        out = {}
        for k in range(2, n + 1):
            prev = self.rows[k - 1]
            acc = 0
            for j in range(1, n - k + 2):
                gj = g[j]
                if gj:
                    p = prev[n - j]
                    if p:
                        acc = acc + gj * p
            row = self.rows.setdefault(k, [0] * k)
            row.append(acc)
            out[k] = acc
        return out

    def set(self, n, value):
        self.g.append(value)
        self.rows[1].append(value)
