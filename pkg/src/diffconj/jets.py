"""Taylor jets of expressions.

A jet here is a coefficient list ``[f(p), f'(p), f''(p)/2, ...]`` carried
through the expression tree node by node.  Rational operations keep
``Fraction`` coefficients; an elementary function switches the jet to
``mpf`` unless its argument sits at a point where the function's series has
rational coefficients (0 for exp/sinh/cosh/tanh/arctan, 1 for log), since
the recurrences below then stay rational.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from . import _kernels as K
from .expr import (
    Add,
    Compose,
    Const,
    Div,
    DomainError,
    Expr,
    ExprError,
    Func,
    Inverse,
    Mul,
    Neg,
    Piecewise,
    Plateau,
    Pow,
    Sub,
    Var,
    plateau_region,
    plateau_transition,
    solve_monotone,
)
from .series import TruncatedSeries, comp_inverse

class NonSmoothPoint(ExprError):
    pass


def taylor_jet(e: Expr, p, order: int) -> TruncatedSeries:
    """Jet of ``x -> e(p + x) - e(p)`` modulo ``X^(order+1)``."""
    full = full_jet(e, p, order)
    return TruncatedSeries(full[1:], order)


def full_jet(e: Expr, p, order: int) -> list:
    """Jet of ``e`` at ``p`` including the value ``e(p)`` as entry 0."""
    if not K.is_exact(p):
        p = K.to_mpf(p)
    seed = [p, 1] + [0] * (order - 1) if order >= 1 else [p]
    return _jet(e, _unify(seed), order)


def _unify(a):
    return K.unify(a)


def _pair(a, b):
    if K.is_exact(a[0]) and K.is_exact(b[0]):
        return a, b
    return [K.to_mpf(v) for v in a], [K.to_mpf(v) for v in b]


def _constant(value, n):
    return _unify([value] + [0] * n)


def _jet(e: Expr, x: list, n: int) -> list:
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return _constant(e.value, n)
    if isinstance(e, Neg):
        return [-c for c in _jet(e.arg, x, n)]
    if isinstance(e, (Add, Sub)):
        a, b = _pair(_jet(e.left, x, n), _jet(e.right, x, n))
        if isinstance(e, Add):
            return [u + v for u, v in zip(a, b)]
        return [u - v for u, v in zip(a, b)]
    if isinstance(e, Mul):
        a, b = _pair(_jet(e.left, x, n), _jet(e.right, x, n))
        return K.mul(a, b, n)
    if isinstance(e, Div):
        a, b = _pair(_jet(e.left, x, n), _jet(e.right, x, n))
        return K.mul(a, reciprocal(b, n), n)
    if isinstance(e, Pow):
        return power(_jet(e.base, x, n), e.exponent, n)
    if isinstance(e, Func):
        return elementary(e.name, _jet(e.arg, x, n), n)
    if isinstance(e, Compose):
        inner = _jet(e.inner, x, n)
        outer = full_jet(e.outer, inner[0], n)
        return substitute_jet(outer, inner, n)
    if isinstance(e, Inverse):
        arg = _jet(e.value, x, n)
        y0 = solve_monotone(e.body, arg[0])
        body = full_jet(e.body, y0, n)
        if body[1] == 0:
            raise NonSmoothPoint("inverse of a map with vanishing derivative")
        inv = comp_inverse(TruncatedSeries(body[1:], n)).padded()
        inv[0] = y0
        return substitute_jet(_unify(inv), arg, n)
    if isinstance(e, Plateau):
        t = _jet(e.t, x, n)
        region = plateau_region(e.radius, t[0])
        if region is not None:
            return _constant(Fraction(region), n)
        outer = full_jet(plateau_transition(e.radius, t[0] > 0), t[0], n)
        return substitute_jet(outer, t, n)
    if isinstance(e, Piecewise):
        a, knot = _pair([x[0]], [e.knot])
        if a[0] < knot[0]:
            return _jet(e.left, x, n)
        if a[0] > knot[0]:
            return _jet(e.right, x, n)
        left, right = _pair(_jet(e.left, x, n), _jet(e.right, x, n))
        if left != right and not K.le(max(abs(u - v) for u, v in zip(left, right)), K.near_zero_tolerance()):
            raise NonSmoothPoint(f"one-sided jets disagree at knot {e.knot}")
        return right
    raise ExprError(f"no jet rule for {type(e).__name__}")


def substitute_jet(outer: list, inner: list, n: int) -> list:
    """``outer`` (a jet about ``inner[0]``) evaluated on the jet ``inner``."""
    outer, inner = _pair(outer, inner)
    shifted = [0] + list(inner[1:])
    return _unify(K.compose(outer, shifted, n))


def reciprocal(b: list, n: int) -> list:
    b = _unify(b)
    if b[0] == 0:
        raise DomainError("division by zero")
    q = [0] * (n + 1)
    q[0] = (b[0] / b[0]) / b[0]
    for m in range(1, n + 1):
        acc = 0
        for k in range(1, m + 1):
            if b[k]:
                acc = acc + b[k] * q[m - k]
        q[m] = -acc / b[0]
    return q


def power(a: list, k: int, n: int) -> list:
    if k < 0:
        return power(reciprocal(a, n), -k, n)
    result = _constant(Fraction(1) if K.is_exact(a[0]) else mpmath.mpf(1), n)
    base = a
    while k:
        if k & 1:
            result = K.mul(result, base, n)
        k >>= 1
        if k:
            base = K.mul(base, base, n)
    return _unify(result)


def _over(value, m: int):
    """``value / m`` without letting an integer accumulator turn into a float."""
    if isinstance(value, int):
        return Fraction(value, m)
    return value / m


def _exp_series(u: list, n: int, y0) -> list:
    # y' = u' y
    y = [y0] + [0] * n
    for m in range(1, n + 1):
        acc = 0
        for k in range(1, m + 1):
            if u[k]:
                acc = acc + k * u[k] * y[m - k]
        y[m] = _over(acc, m)
    return y


def elementary(name: str, u: list, n: int) -> list:
    u0 = u[0]
    exact = K.is_exact(u0) and u0 == (1 if name == "log" else 0)
    if not exact:
        u = [K.to_mpf(c) for c in u]
        u0 = u[0]
    if name == "exp":
        return _exp_series(u, n, Fraction(1) if exact else mpmath.exp(u0))
    if name in ("sinh", "cosh", "tanh"):
        ep = _exp_series(u, n, Fraction(1) if exact else mpmath.exp(u0))
        em = _exp_series([-c for c in u], n, Fraction(1) if exact else mpmath.exp(-u0))
        sinh = [_over(a - b, 2) for a, b in zip(ep, em)]
        cosh = [_over(a + b, 2) for a, b in zip(ep, em)]
        if name == "sinh":
            return sinh
        if name == "cosh":
            return cosh
        return K.mul(sinh, reciprocal(cosh, n), n)
    if name == "log":
        if u0 <= 0:
            raise DomainError("log of nonpositive value")
        y = [Fraction(0) if exact else mpmath.log(u0)] + [0] * n
        for m in range(1, n + 1):
            acc = 0
            for k in range(1, m):
                if y[k] and u[m - k]:
                    acc = acc + k * y[k] * u[m - k]
            y[m] = (u[m] - _over(acc, m)) / u0
        return y
    if name == "arctan":
        # y' = u' / (1 + u^2)
        du = [(k + 1) * u[k + 1] for k in range(n)] + [0]
        one_plus = K.mul(u, u, n)
        one_plus[0] = one_plus[0] + 1
        w = K.mul(du, reciprocal(one_plus, n), n)
        y = [Fraction(0) if exact else mpmath.atan(u0)] + [_over(w[m - 1], m) for m in range(1, n + 1)]
        return y
    raise ExprError(f"unknown function {name!r}")
