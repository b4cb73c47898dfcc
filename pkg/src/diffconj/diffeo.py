"""Diffeomorphisms of the line as specs: degree, body, declared jet, topology.

A spec file holds one ``key = value`` pair per line::

    degree = -1
    expr = "-x - x^3"
    jet = [-1, 0, -1]
    fixed_point = 0
    topology = boundary
    order = 16
    radius = 1

``expr`` or ``jet`` may be omitted (not both).  ``jet`` is the jet at the
fixed point and is padded with zeros up to ``order``.  ``topology`` says
whether the fixed point is interior to, on the boundary of, or of unknown
position relative to the fixed set of the square; ``radius`` is the
half-width of an interval around the fixed point on which the square is
the identity (used only for ``interior``).
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import mpmath

from . import _kernels as K
from .expr import (
    Add,
    Compose,
    Const,
    DomainError,
    Expr,
    ExprError,
    Neg,
    Sub,
    X,
    as_affine,
    evaluate,
    is_rational,
    parse_expression,
    rational_degree,
    solve_monotone,
    substitute,
)
from .jets import full_jet, taylor_jet
from .series import DEFAULT_ORDER, SeriesError, TruncatedSeries, comp_power, max_gap, parse_literal

TOPOLOGIES = ("interior", "boundary", "unknown")
SPEC_KEYS = ("degree", "expr", "jet", "fixed_point", "topology", "order", "radius")

# largest degree bound for which rational identities are certified via jets
MAX_CERTIFIED_DEGREE = 200


class SpecError(ValueError):
    pass


class NotADiffeomorphism(SpecError):
    pass


@dataclass(frozen=True)
class DiffeoSpec:
    degree: int
    body: Expr | None = None
    jet: TruncatedSeries | None = None
    fixed_point: object = None
    topology: str = "unknown"
    order: int = DEFAULT_ORDER
    radius: object = None
    name: str = ""

    def __post_init__(self):
        if self.degree not in (1, -1):
            raise SpecError(f"degree must be 1 or -1, got {self.degree}")
        if self.body is None and self.jet is None:
            raise SpecError("a spec needs an expression, a jet, or both")
        if self.topology not in TOPOLOGIES:
            raise SpecError(f"topology must be one of {', '.join(TOPOLOGIES)}")
        if self.order < 1:
            raise SpecError("order must be positive")
        if self.radius is not None and not self.radius > 0:
            raise SpecError("radius must be positive")
        if self.jet is not None:
            if self.jet.order > self.order:
                raise SpecError(f"jet has {self.jet.order} coefficients but order is {self.order}")
            if self.jet.order < self.order:
                object.__setattr__(self, "jet", TruncatedSeries(self.jet.coeffs, self.order))
            c1 = self.jet[1]
            if c1 == 0 or (c1 > 0) != (self.degree > 0):
                raise SpecError(f"jet multiplier {c1} does not match degree {self.degree}")

    def __call__(self, x):
        if self.body is None:
            raise SpecError("spec has no expression to evaluate")
        return evaluate(self.body, x)

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        return self.body.text() if self.body is not None else f"jet {self.jet.to_literal()}"

    def with_order(self, order: int) -> "DiffeoSpec":
        jet = self.jet
        if jet is not None and jet.order > order:
            jet = jet.truncate(order)
        return replace(self, order=order, jet=jet)


# -- spec files ---------------------------------------------------------------


def _number(text: str, key: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"{key}: not a rational number: {text!r}") from None


def parse_spec(text: str, name: str = "") -> DiffeoSpec:
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SPEC_KEYS:
            raise SpecError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise SpecError(f"line {lineno}: empty value for {key!r}")
        fields[key] = value

    if "degree" not in fields:
        raise SpecError("missing required key 'degree'")
    try:
        degree = int(fields["degree"])
    except ValueError:
        raise SpecError(f"degree: not an integer: {fields['degree']!r}") from None
    order = DEFAULT_ORDER
    if "order" in fields:
        try:
            order = int(fields["order"])
        except ValueError:
            raise SpecError(f"order: not an integer: {fields['order']!r}") from None
    body = None
    if "expr" in fields:
        body = parse_expression(_unquote(fields["expr"]))
    jet = None
    if "jet" in fields:
        coeffs = parse_literal(fields["jet"])
        if len(coeffs) > order and "order" not in fields:
            order = len(coeffs)
        jet = TruncatedSeries(coeffs)
    fixed_point = None
    if fields.get("fixed_point", "solve") != "solve":
        fixed_point = _number(fields["fixed_point"], "fixed_point")
    radius = None
    if "radius" in fields:
        radius = _number(fields["radius"], "radius")
    return DiffeoSpec(
        degree=degree,
        body=body,
        jet=jet,
        fixed_point=fixed_point,
        topology=fields.get("topology", "unknown"),
        order=order,
        radius=radius,
        name=name,
    )


def load_spec(path) -> DiffeoSpec:
    path = Path(path)
    return parse_spec(path.read_text(encoding="utf-8"), name=path.stem)


def _strip_comment(line: str) -> str:
    # a '#' inside a quoted expression is not a comment
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _unquote(value: str) -> str:
    if value[:1] in "\"'":
        try:
            parts = shlex.split(value)
        except ValueError:
            raise SpecError(f"unbalanced quotes in {value!r}") from None
        if len(parts) != 1:
            raise SpecError(f"expected one quoted expression, got {value!r}")
        return parts[0]
    return value


# -- analysis -----------------------------------------------------------------


def _grid(interval, points: int):
    a, b = (Fraction(v) for v in interval)
    step = (b - a) / (points - 1)
    return [a + i * step for i in range(points)]


def degree_of(d: DiffeoSpec, interval=(-2, 2), points: int = 201) -> int:
    """The declared degree, after checking it against the derivative's sign."""
    if d.body is None:
        return 1 if d.jet[1] > 0 else -1
    signs = set()
    for x in _grid(interval, points):
        slope = full_jet(d.body, x, 1)[1]
        if slope == 0:
            raise NotADiffeomorphism(f"derivative vanishes at x = {x}")
        signs.add(1 if slope > 0 else -1)
    if len(signs) > 1:
        raise NotADiffeomorphism("derivative changes sign on the sample grid")
    (sign,) = signs
    if sign != d.degree:
        raise SpecError(f"declared degree {d.degree} but the map has degree {sign}")
    return sign


def fixed_point_of(d: DiffeoSpec):
    """The unique fixed point of an orientation-reversing spec."""
    if d.degree != -1:
        raise SpecError("fixed_point_of needs a degree -1 spec")
    if d.body is None:
        return Fraction(0) if d.fixed_point is None else d.fixed_point
    if d.fixed_point is not None:
        p = d.fixed_point
        residual = abs(K.to_mpf(d.body(p)) - K.to_mpf(p))
        if residual > K.near_zero_tolerance():
            raise SpecError(f"declared fixed point {p} has residual {mpmath.nstr(residual, 5)}")
        return p
    affine = as_affine(d.body)
    if affine is not None and K.is_exact(affine[0]) and K.is_exact(affine[1]):
        a, b = affine
        return b / (1 - a)
    try:
        if d.body(Fraction(0)) == 0:
            return Fraction(0)
    except DomainError:
        pass
    # x -> f(x) - x is strictly decreasing, so the root is unique
    p = solve_monotone(Sub(d.body, X), 0)
    if is_rational(d.body):
        q = Fraction(str(p)).limit_denominator(10**6)
        try:
            if d.body(q) == q:
                return q
        except DomainError:
            pass
    return p


def normalize_to_origin(d: DiffeoSpec) -> DiffeoSpec:
    """Conjugate by the translation to the fixed point, so the result fixes 0."""
    p = fixed_point_of(d)
    if p == 0 and K.is_exact(p):
        return replace(d, fixed_point=Fraction(0))
    body = None
    if d.body is not None:
        affine = as_affine(d.body)
        if affine is not None and K.is_exact(p):
            a = affine[0]
            body = a * X if a != -1 else Neg(X)
        else:
            body = Sub(substitute(d.body, Add(X, Const(p))), Const(p))
    return replace(d, body=body, fixed_point=Fraction(0))


def jet_of(d: DiffeoSpec) -> TruncatedSeries:
    """Jet at the fixed point: the declared one, else computed from the body."""
    if d.jet is not None:
        return d.jet
    p = fixed_point_of(d) if d.degree == -1 else Fraction(0)
    return taylor_jet(d.body, p, d.order)


def check_consistency(d: DiffeoSpec) -> None:
    """A declared jet must agree with the body's jet at the fixed point."""
    if d.body is None or d.jet is None:
        return
    p = fixed_point_of(d) if d.degree == -1 else Fraction(0)
    computed = taylor_jet(d.body, p, d.order)
    if computed.is_exact:
        if computed != d.jet:
            raise SpecError("declared jet disagrees with the expression's jet")
    elif max_gap(computed, d.jet) > K.near_zero_tolerance():
        raise SpecError("declared jet disagrees with the expression's jet")


def square_jet(d: DiffeoSpec) -> TruncatedSeries:
    return comp_power(jet_of(d), 2)


def reflect(d: DiffeoSpec) -> DiffeoSpec:
    """``x -> -f(-x)``; the fixed set of the square is mirrored, topology kept."""
    body = None if d.body is None else Neg(substitute(d.body, Neg(X)))
    jet = None
    if d.jet is not None:
        jet = TruncatedSeries([c if k % 2 else -c for k, c in enumerate(d.jet.coeffs, start=1)])
    fp = None if d.fixed_point is None else -d.fixed_point
    name = f"reflected {d.name}" if d.name else ""
    return replace(d, body=body, jet=jet, fixed_point=fp, name=name)


# -- certified identities of rational bodies -------------------------------------


def _probe_points():
    return (Fraction(0), Fraction(1), Fraction(1, 3), Fraction(-2, 7))


def rational_identity(e: Expr, target: Expr) -> bool:
    """True when the rational bodies ``e`` and ``target`` are provably equal.

    ``e - target`` is ``P/Q`` with ``deg P <= d``; if its jet at a regular
    point vanishes through order ``d`` then ``P`` vanishes identically.
    False means "not certified", not "different".
    """
    if not (is_rational(e) and is_rational(target)):
        return False
    d = rational_degree(e) + rational_degree(target)
    if d > MAX_CERTIFIED_DEGREE:
        return False
    for p in _probe_points():
        try:
            a = full_jet(e, p, d + 1)
            b = full_jet(target, p, d + 1)
        except (DomainError, ExprError, SeriesError):
            continue
        return a == b
    return False


def certified_involution(d: DiffeoSpec) -> bool:
    """True when the body is provably an involution of the whole line."""
    if d.body is None or d.degree != -1:
        return False
    return rational_identity(Compose(d.body, d.body), X)


def certified_equal_jets(f: DiffeoSpec, g: DiffeoSpec) -> bool:
    """True when the full Taylor series at 0 of two normalized specs provably agree.

    Declared jets are taken as the whole series; rational bodies are
    compared as rational functions.  Anything transcendental is uncertified.
    """
    if f.jet is not None and g.jet is not None:
        return f.jet == g.jet
    if f.body is not None and g.body is not None:
        return rational_identity(f.body, g.body)
    return False
