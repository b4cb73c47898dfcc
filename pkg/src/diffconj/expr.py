"""Closed-form expressions in one variable ``x``.

Expressions are small immutable trees.  They evaluate exactly (``Fraction``
in, ``Fraction`` out) while only rational operations are involved, and
switch to ``mpmath.mpf`` at the working precision of the current mpmath
context as soon as a transcendental function or a numeric root is needed.

Grammar (``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``)::

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom (('^' | '**') integer)?
    atom    := number | 'x' | name '(' args ')' | '(' sum ')'

Names: exp, log, sinh, cosh, tanh, arctan (or atan), plus the structural
forms ``compose(outer, inner)``, ``inverse(body, value)``,
``plateau(radius, t)`` and ``piecewise(knot, left, right)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ._kernels import is_exact, to_mpf


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DomainError(ExprError):
    """Evaluation left the domain of a subexpression."""


FUNCTIONS = ("exp", "log", "sinh", "cosh", "tanh", "arctan")
_ALIASES = {"atan": "arctan", "ln": "log"}


# -- nodes --------------------------------------------------------------------


class Expr:
    """Base node.  ``e(value)`` evaluates, ``e(other_expr)`` composes."""

    _prec = 5

    def __call__(self, arg):
        if isinstance(arg, Expr):
            return Compose(self, arg)
        return evaluate(self, arg)

    def __str__(self):
        return self.text()

    def text(self) -> str:
        raise NotImplementedError

    def _wrap(self, prec: int) -> str:
        s = self.text()
        return f"({s})" if self._prec < prec else s

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        return Pow(self, int(n))


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, str):
        return parse_expression(value)
    return Const(value)


@dataclass(frozen=True, eq=True)
class Var(Expr):
    def text(self):
        return "x"


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: object

    def __post_init__(self):
        v = self.value
        object.__setattr__(self, "value", Fraction(v) if is_exact(v) else to_mpf(v))

    @property
    def _prec(self):
        v = self.value
        if v < 0 or (isinstance(v, Fraction) and v.denominator != 1):
            return 2
        return 5

    def text(self):
        v = self.value
        if isinstance(v, Fraction):
            return str(v)
        return mpmath.nstr(v, mpmath.mp.dps)


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr
    _prec = 3

    def text(self):
        return "-" + self.arg._wrap(4)


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr
    _prec = 1

    def text(self):
        return f"{self.left._wrap(1)} + {self.right._wrap(2)}"


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr
    _prec = 1

    def text(self):
        return f"{self.left._wrap(1)} - {self.right._wrap(2)}"


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr
    _prec = 2

    def text(self):
        return f"{self.left._wrap(2)}*{self.right._wrap(3)}"


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr
    _prec = 2

    def text(self):
        return f"{self.left._wrap(2)}/{self.right._wrap(3)}"


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int
    _prec = 4

    def text(self):
        e = str(self.exponent) if self.exponent >= 0 else f"({self.exponent})"
        return f"{self.base._wrap(5)}^{e}"


@dataclass(frozen=True, eq=True)
class Func(Expr):
    name: str
    arg: Expr

    def text(self):
        return f"{self.name}({self.arg.text()})"


@dataclass(frozen=True, eq=True)
class Compose(Expr):
    """``outer`` with ``x`` replaced by ``inner``."""

    outer: Expr
    inner: Expr

    def text(self):
        return f"compose({self.outer.text()}, {self.inner.text()})"


@dataclass(frozen=True, eq=True)
class Inverse(Expr):
    """The ``y`` with ``body(y) = value``; ``body`` must be monotone."""

    body: Expr
    value: Expr

    def text(self):
        return f"inverse({self.body.text()}, {self.value.text()})"


@dataclass(frozen=True, eq=True)
class Plateau(Expr):
    """Smooth cutoff in ``t``: 1 on ``|t| <= r/2``, 0 on ``|t| >= r``."""

    radius: Fraction
    t: Expr

    def text(self):
        return f"plateau({Const(self.radius).text()}, {self.t.text()})"


@dataclass(frozen=True, eq=True)
class Piecewise(Expr):
    """``left`` for ``x < knot``, ``right`` for ``x >= knot``."""

    knot: Fraction
    left: Expr
    right: Expr

    def text(self):
        return f"piecewise({Const(self.knot).text()}, {self.left.text()}, {self.right.text()})"


X = Var()


def const(value) -> Const:
    return Const(value)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*/^(),]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> Expr:
        e = self.sum()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return e

    def sum(self):
        e = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            e = _fold(Add(e, rhs) if op == "+" else Sub(e, rhs))
        return e

    def product(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            e = _fold(Mul(e, rhs) if op == "*" else Div(e, rhs))
        return e

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return _fold(Neg(self.unary()))
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            return _fold(Pow(base, self.integer()))
        return base

    def integer(self) -> int:
        sign = 1
        paren = False
        if self.peek()[1] == "(":
            self.take()
            paren = True
        if self.peek()[1] in ("-", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, val, pos = self.take()
        if kind != "num" or not val.isdigit():
            raise ExprSyntaxError("only integer powers are allowed", pos)
        if paren:
            self.expect(")")
        return sign * int(val)

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Const(Fraction(val))
        if val == "(":
            e = self.sum()
            self.expect(")")
            return e
        if kind == "name":
            if val == "x":
                return X
            name = _ALIASES.get(val, val)
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.sum()
                self.expect(")")
                return _fold(Func(name, arg))
            if name in ("compose", "inverse", "plateau", "piecewise"):
                return self.structural(name, pos)
            raise ExprSyntaxError(f"unknown identifier {val!r}", pos)
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"unexpected {found}", pos)

    def structural(self, name, pos):
        self.expect("(")
        args = [self.sum()]
        while self.peek()[1] == ",":
            self.take()
            args.append(self.sum())
        self.expect(")")
        arity = {"compose": 2, "inverse": 2, "plateau": 2, "piecewise": 3}[name]
        if len(args) != arity:
            raise ExprSyntaxError(f"{name} takes {arity} arguments", pos)
        if name == "compose":
            return Compose(*args)
        if name == "inverse":
            return Inverse(*args)
        if not isinstance(args[0], Const):
            raise ExprSyntaxError(f"{name} needs a numeric first argument", pos)
        if name == "plateau":
            if not args[0].value > 0:
                raise ExprSyntaxError("plateau radius must be positive", pos)
            return Plateau(args[0].value, args[1])
        return Piecewise(args[0].value, args[1], args[2])


def _fold(e: Expr) -> Expr:
    """Fold operations on exact constants so ``1/3`` and ``-2`` stay literals."""
    if isinstance(e, Neg) and isinstance(e.arg, Const) and is_exact(e.arg.value):
        return Const(-e.arg.value)
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = e.left, e.right
        if isinstance(a, Const) and isinstance(b, Const) and is_exact(a.value) and is_exact(b.value):
            try:
                return Const(_binary(type(e), a.value, b.value))
            except DomainError:
                return e
    if isinstance(e, Pow) and isinstance(e.base, Const) and is_exact(e.base.value):
        try:
            return Const(_power(e.base.value, e.exponent))
        except DomainError:
            return e
    return e


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()


# -- evaluation ---------------------------------------------------------------


def _lift(a, b):
    if is_exact(a) and is_exact(b):
        return a, b
    return to_mpf(a), to_mpf(b)


def _binary(kind, a, b):
    a, b = _lift(a, b)
    if kind is Add:
        return a + b
    if kind is Sub:
        return a - b
    if kind is Mul:
        return a * b
    if b == 0:
        raise DomainError("division by zero")
    return a / b


def _power(a, n: int):
    if n < 0 and a == 0:
        raise DomainError("negative power of zero")
    if is_exact(a):
        return Fraction(a) ** n
    return a**n


def apply_function(name: str, u):
    if name == "log" and u <= 0:
        raise DomainError(f"log of nonpositive value {mpmath.nstr(to_mpf(u), 8)}")
    return getattr(mpmath, {"arctan": "atan"}.get(name, name))(to_mpf(u))


def evaluate(e: Expr, x):
    """Value of ``e`` at ``x`` in the current mpmath precision."""
    if not is_exact(x):
        x = to_mpf(x)
    return _eval(e, x)


def _eval(e: Expr, x):
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Neg):
        return -_eval(e.arg, x)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return _binary(type(e), _eval(e.left, x), _eval(e.right, x))
    if isinstance(e, Pow):
        return _power(_eval(e.base, x), e.exponent)
    if isinstance(e, Func):
        return apply_function(e.name, _eval(e.arg, x))
    if isinstance(e, Compose):
        return _eval(e.outer, _eval(e.inner, x))
    if isinstance(e, Inverse):
        return solve_monotone(e.body, _eval(e.value, x))
    if isinstance(e, Plateau):
        t = _eval(e.t, x)
        region = plateau_region(e.radius, t)
        if region is not None:
            return Fraction(region)
        return _eval(plateau_transition(e.radius, t > 0), t)
    if isinstance(e, Piecewise):
        a, k = _lift(x, e.knot)
        return _eval(e.left if a < k else e.right, x)
    raise ExprError(f"cannot evaluate node {type(e).__name__}")


def plateau_region(radius, t):
    """1 or 0 on the flat parts of the plateau, None in the transition zones."""
    a, radius = _lift(abs(t), radius)
    if a <= radius / 2:
        return 1
    if a >= radius:
        return 0
    return None


@lru_cache(maxsize=64)
def plateau_transition(radius, positive: bool) -> Expr:
    """``phi(1-s) / (phi(s) + phi(1-s))`` with ``phi(s) = exp(-1/s)`` and ``s = 2|t|/r - 1``."""
    scale = Fraction(2) / radius if is_exact(radius) else 2 / to_mpf(radius)
    s = Sub(Mul(Const(scale if positive else -scale), X), Const(1))
    near = Func("exp", Div(Const(-1), Sub(Const(1), s)))
    far = Func("exp", Div(Const(-1), s))
    return Div(near, Add(far, near))


def solve_monotone(body: Expr, target):
    """Solve ``body(y) = target`` for a strictly monotone ``body``.

    Affine bodies are inverted exactly.  Otherwise a bracket is grown by
    doubling from ``[-1, 1]`` and Newton steps (derivatives from order-1
    jets) are taken inside it, falling back to bisection whenever a step
    would leave the bracket.
    """
    affine = as_affine(body)
    if affine is not None:
        a, b = affine
        if a == 0:
            raise DomainError("cannot invert a constant map")
        a, t = _lift(a, target)
        a, b = _lift(a, b)
        t, b = _lift(t, b)
        return (t - b) / a
    exact_target = target if is_exact(target) else None
    y = _solve_numeric(body, to_mpf(target))
    if exact_target is not None:
        # prefer an exact root when a nearby rational hits the target exactly
        q = Fraction(mpmath.nstr(y, mpmath.mp.dps)).limit_denominator(10**6)
        try:
            if _eval(body, q) == exact_target:
                return q
        except (DomainError, ZeroDivisionError):
            pass
    return y


def _solve_numeric(body: Expr, target):
    from .jets import NonSmoothPoint, full_jet

    def resid(y):
        return to_mpf(_eval(body, y)) - target

    lo, hi = mpmath.mpf(-1), mpmath.mpf(1)
    f_lo, f_hi = resid(lo), resid(hi)
    for _ in range(400):
        if (f_lo <= 0) != (f_hi <= 0) or f_lo == 0 or f_hi == 0:
            break
        lo, hi = 2 * lo, 2 * hi
        f_lo, f_hi = resid(lo), resid(hi)
    else:
        raise DomainError("no sign change found while inverting; map is not onto")
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    rising = f_hi > 0
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec + 6)
    y = min(max(target, lo), hi)
    if not lo < y < hi:
        y = (lo + hi) / 2
    for _ in range(mpmath.mp.prec + 100):
        try:
            value, slope = full_jet(body, y, 1)
            value, slope = to_mpf(value) - target, to_mpf(slope)
        except NonSmoothPoint:
            value, slope = resid(y), mpmath.mpf(0)
        if value == 0:
            return y
        if (value > 0) == rising:
            hi = y
        else:
            lo = y
        step = value / slope if slope else None
        nxt = y - step if step is not None else None
        if nxt is None or not lo < nxt < hi:
            nxt = (lo + hi) / 2
        if abs(nxt - y) <= eps * max(1, abs(y)) or hi - lo <= eps * max(1, abs(y)):
            return nxt
        y = nxt
    return y


def invert(body: Expr, value: Expr) -> Expr:
    """``body^-1(value)``, unwrapping ``body = inverse(b, x)`` to ``b(value)``."""
    if isinstance(body, Inverse) and isinstance(body.value, Var):
        return Compose(body.body, value)
    return Inverse(body, value)


# -- structural queries ---------------------------------------------------------


def as_affine(e: Expr):
    """``(a, b)`` with ``e = a*x + b`` when the tree is visibly affine, else None."""
    if isinstance(e, Var):
        return Fraction(1), Fraction(0)
    if isinstance(e, Const):
        return Fraction(0), e.value
    if isinstance(e, Neg):
        inner = as_affine(e.arg)
        return None if inner is None else (-inner[0], -inner[1])
    if isinstance(e, (Add, Sub)):
        l, r = as_affine(e.left), as_affine(e.right)
        if l is None or r is None:
            return None
        op = Add if isinstance(e, Add) else Sub
        return _binary(op, l[0], r[0]), _binary(op, l[1], r[1])
    if isinstance(e, Mul):
        l, r = as_affine(e.left), as_affine(e.right)
        if l is None or r is None:
            return None
        if l[0] == 0:
            return _binary(Mul, l[1], r[0]), _binary(Mul, l[1], r[1])
        if r[0] == 0:
            return _binary(Mul, r[1], l[0]), _binary(Mul, r[1], l[1])
        return None
    if isinstance(e, Div):
        l, r = as_affine(e.left), as_affine(e.right)
        if l is None or r is None or r[0] != 0 or r[1] == 0:
            return None
        return _binary(Div, l[0], r[1]), _binary(Div, l[1], r[1])
    if isinstance(e, Pow) and e.exponent == 1:
        return as_affine(e.base)
    if isinstance(e, Compose):
        o, i = as_affine(e.outer), as_affine(e.inner)
        if o is None or i is None:
            return None
        return _binary(Mul, o[0], i[0]), _binary(Add, _binary(Mul, o[0], i[1]), o[1])
    return None


def is_rational(e: Expr) -> bool:
    """True when only exact constants and rational operations occur."""
    if isinstance(e, Var):
        return True
    if isinstance(e, Const):
        return is_exact(e.value)
    if isinstance(e, (Neg, Pow)):
        return is_rational(e.arg if isinstance(e, Neg) else e.base)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return is_rational(e.left) and is_rational(e.right)
    if isinstance(e, Compose):
        return is_rational(e.outer) and is_rational(e.inner)
    return False


def rational_degree(e: Expr) -> int:
    """Upper bound on ``max(deg P, deg Q)`` for ``e = P/Q``; needs :func:`is_rational`."""
    if isinstance(e, Var):
        return 1
    if isinstance(e, Const):
        return 0
    if isinstance(e, Neg):
        return rational_degree(e.arg)
    if isinstance(e, Pow):
        return abs(e.exponent) * rational_degree(e.base)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return rational_degree(e.left) + rational_degree(e.right)
    if isinstance(e, Compose):
        return rational_degree(e.outer) * rational_degree(e.inner)
    raise ExprError("not a rational expression")


def substitute(e: Expr, replacement: Expr) -> Expr:
    """Replace ``x`` by ``replacement`` throughout the tree."""
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Const):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, replacement))
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(substitute(e.left, replacement), substitute(e.right, replacement))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, replacement), e.exponent)
    if isinstance(e, Func):
        return Func(e.name, substitute(e.arg, replacement))
    if isinstance(e, Compose):
        return Compose(e.outer, substitute(e.inner, replacement))
    if isinstance(e, Inverse):
        return Inverse(e.body, substitute(e.value, replacement))
    if isinstance(e, Plateau):
        return Plateau(e.radius, substitute(e.t, replacement))
    # piecewise selects on its own argument, so keep it intact
    return Compose(e, replacement)
