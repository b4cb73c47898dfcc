"""Deciding conjugacy of orientation-reversing diffeomorphisms of the line.

The entry point is :func:`full_group_decide`.  It settles what it can from
degrees and formal invariants, then reduces to two runs of
:func:`reversing_decide` (on ``f`` and on ``x -> -f(-x)``), each of which
assumes the squares of its two maps coincide and sorts the pair into one
of three cases by the jet of ``f`` and the declared topology of the fixed
set of ``f o f`` at 0.

Whenever a conjugator can be written down it is returned as an
expression and checked on a grid; a failed check demotes the verdict,
it never promotes one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

from . import _kernels as K
from .diffeo import (
    DiffeoSpec,
    SpecError,
    certified_equal_jets,
    certified_involution,
    check_consistency,
    degree_of,
    fixed_point_of,
    jet_of,
    normalize_to_origin,
    reflect,
)
from .dynamics import NotCommuting
from .expr import (
    Add,
    Compose,
    Const,
    DomainError,
    Expr,
    ExprError,
    Inverse,
    Mul,
    Neg,
    Piecewise,
    Plateau,
    Sub,
    X,
    as_affine,
    evaluate,
    invert,
    substitute,
)
from .jets import full_jet, taylor_jet
from .series import SeriesError, TruncatedSeries, comp_inverse, comp_power, compose, deviation_index, max_gap
from .verify import (
    CERTIFICATE_TOLERANCE,
    DEFAULT_INTERVAL,
    DEFAULT_POINTS,
    GridCheckReport,
    check_conjugacy_numeric,
    check_maps_close,
    grid,
)

CONJUGATE = "CONJUGATE"
NOT_CONJUGATE = "NOT_CONJUGATE"
UNDETERMINED = "UNDETERMINED_AT_ORDER"

CASE1 = "CASE1_NONINVOLUTIVE_JET"
CASE2 = "CASE2_INTERIOR"
CASE3 = "CASE3_BOUNDARY"
INVOLUTION = "INVOLUTION"
ORIENTATION_REDUCED = "ORIENTATION_REDUCED"
PRECONDITION_FAILED = "PRECONDITION_FAILED"

# grid size for comparing f o f with g o g and for shape checks
SAMPLE_POINTS = 201


class ConjugacyError(ValueError):
    pass


@dataclass(frozen=True)
class ConjugatorCertificate:
    """A map ``h`` with ``h o f = g o h``.

    ``form`` is ``closed`` or ``piecewise`` when ``expr`` is set and ``jet``
    otherwise.  ``parts`` names the ingredients (``psi``, ``k``, ``h1`` ...).
    """

    form: str
    jet: TruncatedSeries | None
    expr: Expr | None = None
    existence_only: bool = False
    parts: tuple = ()
    check: GridCheckReport | None = None

    def __call__(self, x):
        if self.expr is None:
            raise ConjugacyError("certificate has no closed form to evaluate")
        return evaluate(self.expr, x)

    def text(self) -> str:
        if self.expr is not None:
            return self.expr.text()
        return f"jet {self.jet.to_literal()}" if self.jet is not None else "existence only"

    def verify(self, f, g, interval=DEFAULT_INTERVAL, points=DEFAULT_POINTS, tol=CERTIFICATE_TOLERANCE):
        if self.expr is None:
            raise ConjugacyError("certificate has no closed form to check")
        return check_conjugacy_numeric(f, g, self.expr, interval, points, tol)

    def to_dict(self) -> dict:
        return {
            "form": self.form,
            "expression": self.expr.text() if self.expr is not None else None,
            "jet": self.jet.to_literal() if self.jet is not None else None,
            "existence_only": self.existence_only,
            "parts": {name: e.text() for name, e in self.parts},
        }


@dataclass(frozen=True)
class ConjugacyVerdict:
    status: str
    case_tag: str
    order_used: int
    certificate: ConjugatorCertificate | None = None
    notes: tuple = ()
    residuals: dict = field(default_factory=dict)
    branch: str | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "case_tag": self.case_tag,
            "order_used": self.order_used,
            "branch": self.branch,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "residuals": {k: _fmt(v) for k, v in self.residuals.items()},
            "notes": list(self.notes),
        }


def _fmt(v):
    if isinstance(v, GridCheckReport):
        return v.to_dict()
    if K.is_exact(v):
        return str(Fraction(v))
    return mpmath.nstr(v, 8)


def _verdict(status, tag, order, *notes, certificate=None, residuals=None):
    return ConjugacyVerdict(status, tag, order, certificate, tuple(notes), dict(residuals or {}))


def _precondition(order, *notes):
    return _verdict(UNDETERMINED, PRECONDITION_FAILED, order, *notes)


# -- small helpers ----------------------------------------------------------------


def _close(S: TruncatedSeries, T: TruncatedSeries) -> bool:
    """Exact equality for exact series, else agreement to the working tolerance."""
    if S.is_exact and T.is_exact:
        return S == T
    return max_gap(S, T) <= K.near_zero_tolerance()


def _identity(order):
    return TruncatedSeries.identity(order)


def _simplify(e: Expr) -> Expr:
    """Rewrite a visibly affine expression with exact coefficients as ``a*x + b``."""
    affine = as_affine(e)
    if affine is None or not (K.is_exact(affine[0]) and K.is_exact(affine[1])):
        return e
    a, b = Fraction(affine[0]), Fraction(affine[1])
    lead = X if a == 1 else Neg(X) if a == -1 else Mul(Const(a), X)
    if b == 0:
        return lead
    return Add(lead, Const(b)) if b > 0 else Sub(lead, Const(-b))


def _invert_then(outer_inverse_of: Expr, inner: Expr) -> Expr:
    """``outer^-1 o inner``, kept affine when both are affine."""
    a = as_affine(outer_inverse_of)
    b = as_affine(inner)
    if a is not None and b is not None and all(K.is_exact(v) for v in (*a, *b)):
        return _simplify(Mul(Const(1 / Fraction(a[0])), Sub(inner, Const(a[1]))))
    return invert(outer_inverse_of, inner)


def _has_piecewise(e: Expr) -> bool:
    if isinstance(e, Piecewise):
        return True
    return any(_has_piecewise(v) for v in vars(e).values() if isinstance(v, Expr))


def _certificate(expr: Expr, at, order: int, parts=()) -> ConjugatorCertificate:
    form = "piecewise" if _has_piecewise(expr) else "closed"
    return ConjugatorCertificate(form, taylor_jet(expr, at, order), expr, False, tuple(parts))


def _monotone_increasing(e: Expr, interval, points=SAMPLE_POINTS) -> bool:
    return all(full_jet(e, x, 1)[1] > 0 for x in grid(interval, points))


def _same_spec(f: DiffeoSpec, g: DiffeoSpec) -> bool:
    return replace(f, name="") == replace(g, name="")


# -- guards and constructions -------------------------------------------------------


def kopell_guard(h_jet: TruncatedSeries, fsq_jet: TruncatedSeries, topology: str) -> bool:
    """Jet-level check that ``h`` may commute with the square near a boundary fixed point.

    When the square's jet is ``X`` and 0 is a boundary point of its fixed
    set, a commuting ``h`` fixing 0 must itself have jet ``X``; the answer
    is ``True`` in every other situation.
    """
    if not _close(compose(h_jet, fsq_jet), compose(fsq_jet, h_jet)):
        raise NotCommuting("h does not commute with the square")
    if not h_jet[1] > 0:
        raise SeriesError("h must preserve orientation")
    if topology == "boundary" and _close(fsq_jet, _identity(fsq_jet.order)):
        return _close(h_jet, _identity(h_jet.order))
    return True


def _half_difference(body: Expr) -> Expr:
    # x -> (x - body(x)) / 2
    return Mul(Const(Fraction(1, 2)), Sub(X, body))


def involution_conjugator(
    tau: DiffeoSpec,
    interval=DEFAULT_INTERVAL,
    points: int = SAMPLE_POINTS,
) -> ConjugatorCertificate:
    """``psi = (x - tau(x)) / 2``, which conjugates the involution ``tau`` to ``-x``."""
    if tau.body is None or tau.degree != -1:
        raise ConjugacyError("need an orientation-reversing map given by an expression")
    p = fixed_point_of(tau)
    tj = taylor_jet(tau.body, p, tau.order)
    if not _close(comp_power(tj, 2), _identity(tau.order)):
        raise ConjugacyError("not an involution: its square has a nontrivial jet")
    if not check_maps_close(Compose(tau.body, tau.body), X, interval, points).passed:
        raise ConjugacyError("not an involution: tau(tau(x)) != x on the grid")
    psi = _simplify(_half_difference(tau.body))
    cert = _certificate(psi, p, tau.order, (("psi", psi),))
    check = check_conjugacy_numeric(tau.body, Neg(X), psi, interval, points)
    if not check.passed:
        raise ConjugacyError("psi(tau(x)) = -psi(x) fails on the grid")
    return replace(cert, check=check)


def involution_pair_conjugator(tau1: DiffeoSpec, tau2: DiffeoSpec, interval=DEFAULT_INTERVAL, points=SAMPLE_POINTS):
    """``psi2^-1 o psi1``, which conjugates ``tau1`` to ``tau2``."""
    c1 = involution_conjugator(tau1, interval, points)
    c2 = involution_conjugator(tau2, interval, points)
    h = _invert_then(c2.expr, c1.expr)
    return _certificate(h, fixed_point_of(tau1), tau1.order, (("psi1", c1.expr), ("psi2", c2.expr)))


def glue_conjugator(f: DiffeoSpec, g2: DiffeoSpec, inner: Expr | None = None) -> ConjugatorCertificate:
    """``k = x`` for ``x >= 0`` and ``g2(f^-1(x))`` for ``x < 0``.

    Both maps must fix 0 and have equal squares and equal jets there.  With
    ``inner`` (a map commuting with the square that conjugates the jets
    near 0) the result is ``inner o k`` for the conjugate ``g2^inner``,
    i.e. ``inner`` on the right and ``g2 o inner o f^-1`` on the left.
    """
    if f.body is None or g2.body is None:
        raise ConjugacyError("gluing needs expressions for both maps")
    order = min(f.order, g2.order)
    F = taylor_jet(f.body, 0, order)
    G = taylor_jet(g2.body, 0, order)
    right = X if inner is None else inner
    Hj = _identity(order) if inner is None else taylor_jet(inner, 0, order)
    if not _close(compose(Hj, F), compose(G, Hj)):
        raise ConjugacyError("jets at 0 do not match; the glued map would not be smooth")
    f_inv = invert(f.body, X)
    left = Compose(g2.body, f_inv if inner is None else Compose(right, f_inv))
    k = Piecewise(Fraction(0), left, right)
    parts = (("k", k),) if inner is None else (("h", inner), ("k", k))
    return _certificate(k, Fraction(0), order, parts)


def interior_conjugator(
    f: DiffeoSpec,
    g: DiffeoSpec,
    radius=None,
    whole_line: bool = False,
) -> ConjugatorCertificate:
    """``h = h3^-1 o h2`` for maps that are involutions near 0.

    ``h2`` blends ``h1 = (x - f(x))/2`` into the identity with a plateau
    that is 1 on ``[-r/2, r/2]`` and 0 off ``(-r, r)``; ``h3`` does the
    same for ``g``.  With ``whole_line`` (both squares are the identity
    everywhere) no blending is needed.
    """
    if f.body is None or g.body is None:
        raise ConjugacyError("interior construction needs expressions for both maps")
    order = min(f.order, g.order)
    if not whole_line:
        declared = [r for r in (f.radius, g.radius) if r is not None]
        if not declared:
            raise ConjugacyError("interior topology needs a declared radius")
        bound = min(declared)
        radius = bound if radius is None else Fraction(radius)
        if not 0 < radius <= bound:
            raise ConjugacyError(f"radius {radius} lies outside the declared interval (0, {bound}]")

    def blend(body):
        h1 = _half_difference(body)
        if whole_line:
            return _simplify(h1)
        beta = Plateau(radius, X)
        return Add(Mul(beta, h1), Mul(Sub(Const(1), beta), X))

    h2, h3 = blend(f.body), blend(g.body)
    span = DEFAULT_INTERVAL if whole_line else (-radius, radius)
    for name, h in (("h2", h2), ("h3", h3)):
        if not _monotone_increasing(h, span):
            raise ConjugacyError(f"{name} is not increasing on the sample grid")
    h = _invert_then(h3, h2)
    cert = _certificate(h, Fraction(0), order, (("h2", h2), ("h3", h3)))
    F = taylor_jet(f.body, 0, order)
    G = taylor_jet(g.body, 0, order)
    if not _close(compose(cert.jet, F), compose(G, cert.jet)):
        raise ConjugacyError("jet identity T0h o T0f = T0g o T0h fails")
    return cert


def _formal_interior(F: TruncatedSeries, G: TruncatedSeries) -> TruncatedSeries:
    """Series analogue of ``h3^-1 o h1`` for two formal involutions."""
    half = Fraction(1, 2)
    X1 = _identity(F.order)
    H1 = (X1 - F).scale(half)
    H3 = (X1 - G).scale(half)
    return compose(comp_inverse(H3), H1)


# -- the case analysis ---------------------------------------------------------------


def _resolve_topology(f: DiffeoSpec, g: DiffeoSpec, whole_line: bool):
    declared = {t for t in (f.topology, g.topology) if t != "unknown"}
    if whole_line:
        declared.add("interior")
    if len(declared) > 1:
        return None
    return declared.pop() if declared else "unknown"


def reversing_decide(
    f: DiffeoSpec,
    g: DiffeoSpec,
    interval=DEFAULT_INTERVAL,
    points: int = SAMPLE_POINTS,
) -> ConjugacyVerdict:
    """Is there an orientation-preserving ``h`` with ``h o f = g o h``?

    ``f`` and ``g`` reverse orientation, fix 0 and are assumed to have the
    same square; the square jets are compared exactly and, when both maps
    have expressions, the squares are compared on a grid.  The returned
    certificate lives in these normalized coordinates.
    """
    order = min(f.order, g.order)
    f, g = f.with_order(order), g.with_order(order)
    F, G = jet_of(f), jet_of(g)
    if not (F[1] < 0 and G[1] < 0):
        raise SpecError("reversing_decide needs orientation-reversing maps")
    for d in (f, g):
        if d.body is not None and fixed_point_of(d) != 0:
            raise SpecError("reversing_decide needs maps normalized to fix 0")
    SF, SG = comp_power(F, 2), comp_power(G, 2)
    if not _close(SF, SG):
        return _precondition(order, "square_jets_differ")
    residuals = {}
    bodies = f.body is not None and g.body is not None
    if bodies:
        sq = check_maps_close(Compose(f.body, f.body), Compose(g.body, g.body), interval, SAMPLE_POINTS)
        residuals["squares"] = sq.max_residual
        if not sq.passed:
            return _verdict(UNDETERMINED, PRECONDITION_FAILED, order, "squares_differ_on_grid", residuals=residuals)
    whole_line = certified_involution(f) or certified_involution(g)
    topology = _resolve_topology(f, g, whole_line)
    if topology is None:
        return _precondition(order, "topology_conflict")
    involutive = _close(SF, _identity(order))

    if topology == "interior" and not involutive:
        return _precondition(order, "interior_topology_but_square_jet_not_identity")

    if not involutive:
        if not _close(F, G):
            # equal squares with a non-involutive jet force equal jets
            return _precondition(order, "case1_jets_differ")
        cert = glue_conjugator(f, g) if bodies else _existence(order)
        return _verdict(CONJUGATE, CASE1, order, "square_jet_not_identity", certificate=cert, residuals=residuals)

    if topology == "interior":
        if bodies:
            try:
                radius_ok = whole_line or _interior_shape_ok(f, g)
            except ConjugacyError as exc:
                return _precondition(order, f"interior_check_failed: {exc}")
            if not radius_ok:
                return _precondition(order, "square_not_identity_near_0")
            h = interior_conjugator(f, g, whole_line=whole_line)
            cert = glue_conjugator(f, g, inner=h.expr)
            cert = replace(cert, parts=h.parts + cert.parts)
        else:
            Hj = _formal_interior(F, G)
            cert = ConjugatorCertificate("jet", Hj, existence_only=True)
        return _verdict(CONJUGATE, CASE2, order, "fixed_point_interior", certificate=cert, residuals=residuals)

    if topology == "boundary":
        if not _close(F, G):
            gap = max_gap(F, G)
            residuals["jet_gap"] = gap
            return _verdict(NOT_CONJUGATE, CASE3, order, "jets_differ", residuals=residuals)
        if not certified_equal_jets(f, g):
            return _verdict(UNDETERMINED, CASE3, order, "jets_agree_to_order_only", residuals=residuals)
        cert = glue_conjugator(f, g) if bodies else _existence(order)
        if not kopell_guard(cert.jet, SF, topology):
            return _precondition(order, "kopell_guard_rejected_certificate")
        return _verdict(CONJUGATE, CASE3, order, "jets_equal", certificate=cert, residuals=residuals)

    return _verdict(UNDETERMINED, PRECONDITION_FAILED, order, "topology_unknown_with_involutive_jet", residuals=residuals)


def _existence(order) -> ConjugatorCertificate:
    # the glued map has jet X at 0
    return ConjugatorCertificate("jet", _identity(order), existence_only=True)


def _interior_shape_ok(f: DiffeoSpec, g: DiffeoSpec) -> bool:
    """Sampled check that the square is the identity on the declared interval."""
    declared = [r for r in (f.radius, g.radius) if r is not None]
    if not declared:
        raise ConjugacyError("interior topology needs a declared radius")
    r = min(declared)
    report = check_maps_close(Compose(f.body, f.body), X, (-r, r), SAMPLE_POINTS)
    return report.passed


# -- the full group ------------------------------------------------------------------


def _conjugated_by(g: DiffeoSpec, h1: Expr) -> DiffeoSpec:
    # h1^-1 o g o h1
    if g.body is None:
        raise SpecError("a user-supplied h1 needs an expression for g")
    body = invert(h1, Compose(g.body, h1))
    return replace(g, body=body, jet=None, fixed_point=None, name=f"{g.name} conjugated by h1" if g.name else "")


def _transport(cert: ConjugatorCertificate, reflected: bool, pf, pg, h1: Expr | None, at, order):
    """Carry a normalized certificate back to the original coordinates."""
    if cert.expr is None:
        jet = cert.jet
        if reflected:
            jet = compose(jet, TruncatedSeries.linear(-1, jet.order))
        if h1 is not None:
            jet = compose(taylor_jet(h1, pg, order), jet)
        return replace(cert, jet=jet)
    e = cert.expr
    if reflected:
        e = substitute(e, Neg(X))
    if pf != 0:
        e = substitute(e, Sub(X, Const(pf)))
    if pg != 0:
        e = Add(Const(pg), e)
    if h1 is not None:
        e = Compose(h1, e)
    e = _simplify(e)
    parts = cert.parts + ((("h1", h1),) if h1 is not None else ())
    return replace(_certificate(e, at, order, parts), check=None)


def full_group_decide(
    f: DiffeoSpec,
    g: DiffeoSpec,
    h1: Expr | None = None,
    order: int | None = None,
    precision: int = K.DEFAULT_PRECISION,
    interval=DEFAULT_INTERVAL,
    points: int = DEFAULT_POINTS,
    tol=CERTIFICATE_TOLERANCE,
) -> ConjugacyVerdict:
    """Decide whether some diffeomorphism ``h`` of the line has ``h o f = g o h``.

    ``h1``, when given, is an orientation-preserving map with
    ``h1^-1 o g o g o h1 = f o f``; ``g`` is replaced by ``h1^-1 o g o h1``
    before deciding and ``h1`` is folded back into the certificate.
    """
    with mpmath.workdps(precision):
        order = order or max(f.order, g.order)
        f, g = f.with_order(order), g.with_order(order)
        return _decide(f, g, h1, order, interval, points, tol)


def _decide(f, g, h1, order, interval, points, tol):
    for d in (f, g):
        check_consistency(d)
    if _same_spec(f, g) and h1 is None:
        at = fixed_point_of(f) if f.degree == -1 else Fraction(0)
        cert = _certificate(X, at, order) if f.body is not None else ConjugatorCertificate("jet", _identity(order))
        return _finish(_verdict(CONJUGATE, ORIENTATION_REDUCED, order, "identical_specs", certificate=cert), f, g, interval, points, tol)

    df, dg = degree_of(f, interval), degree_of(g, interval)
    if df != dg:
        return _verdict(NOT_CONJUGATE, ORIENTATION_REDUCED, order, "degree_mismatch")
    if df == 1:
        return _precondition(order, "both_orientation_preserving_out_of_scope")

    target = g
    if h1 is not None:
        if degree_of(DiffeoSpec(1, body=h1), interval) != 1:
            raise SpecError("h1 must preserve orientation")
        target = _conjugated_by(g, h1)

    if h1 is None and certified_involution(f) and certified_involution(g):
        cert = involution_pair_conjugator(f, g, interval)
        verdict = _verdict(CONJUGATE, INVOLUTION, order, "both_maps_are_involutions", certificate=cert)
        return _finish(verdict, f, g, interval, points, tol)

    pf, pg = fixed_point_of(f), fixed_point_of(target)
    fn, gn = normalize_to_origin(f), normalize_to_origin(target)
    F, G = jet_of(fn), jet_of(gn)
    refuted = _formal_invariants_differ(F, G)
    if refuted:
        return _verdict(NOT_CONJUGATE, ORIENTATION_REDUCED, order, refuted)

    direct = reversing_decide(fn, gn, interval)
    chosen, reflected = direct, False
    if direct.status != CONJUGATE:
        mirrored = reversing_decide(reflect(fn), gn, interval)
        if mirrored.status == CONJUGATE:
            chosen, reflected = mirrored, True
        elif direct.status == NOT_CONJUGATE and mirrored.status == NOT_CONJUGATE:
            notes = direct.notes + tuple(f"reflected:{n}" for n in mirrored.notes)
            return replace(direct, notes=notes, branch="both")
        else:
            notes = direct.notes + tuple(f"reflected:{n}" for n in mirrored.notes)
            status = UNDETERMINED
            return replace(direct if direct.status != NOT_CONJUGATE else mirrored, status=status, notes=notes, branch="both")

    cert = chosen.certificate
    if cert is not None:
        cert = _transport(cert, reflected, pf, pg, h1, pf, order)
    verdict = replace(chosen, certificate=cert, branch="reflected" if reflected else "direct")
    return _finish(verdict, f, g, interval, points, tol)


def _formal_invariants_differ(F: TruncatedSeries, G: TruncatedSeries) -> str | None:
    """Multiplier and deviation of the square are conjugacy invariants of the jets."""
    if not (F.is_exact and G.is_exact):
        return None
    if F[1] != G[1]:
        return "multipliers_differ"
    if deviation_index(comp_power(F, 2)) != deviation_index(comp_power(G, 2)):
        return "square_deviation_differs"
    return None


def _finish(verdict: ConjugacyVerdict, f, g, interval, points, tol) -> ConjugacyVerdict:
    """Check a certificate on the grid and against the jets; demote it on failure."""
    cert = verdict.certificate
    if verdict.status != CONJUGATE or cert is None:
        return verdict
    residuals = dict(verdict.residuals)
    notes = list(verdict.notes)
    if cert.jet is not None and f.degree == -1:
        F = jet_of(f).truncate(cert.jet.order)
        G = jet_of(g).truncate(cert.jet.order)
        lhs, rhs = compose(cert.jet, F), compose(G, cert.jet)
        residuals["jet"] = max_gap(lhs, rhs)
        if not _close(lhs, rhs):
            notes.append("certificate_jet_identity_failed")
            return replace(verdict, status=UNDETERMINED, case_tag=PRECONDITION_FAILED, notes=tuple(notes), residuals=residuals)
    if cert.expr is not None and f.body is not None and g.body is not None:
        try:
            check = check_conjugacy_numeric(f.body, g.body, cert.expr, interval, points, tol)
        except (DomainError, ExprError) as exc:
            notes.append(f"certificate_evaluation_failed: {exc}")
            return replace(verdict, status=UNDETERMINED, case_tag=PRECONDITION_FAILED, notes=tuple(notes), residuals=residuals)
        residuals["grid"] = check
        cert = replace(cert, check=check)
        if not check.passed:
            notes.append("certificate_failed_grid_check")
            return replace(verdict, status=UNDETERMINED, case_tag=PRECONDITION_FAILED, certificate=cert, notes=tuple(notes), residuals=residuals)
        notes.append("certificate_verified")
    elif cert.existence_only:
        notes.append("existence_only")
    return replace(verdict, certificate=cert, notes=tuple(notes), residuals=residuals)


def decide_status(f: DiffeoSpec, g: DiffeoSpec, **kwargs) -> str:
    return full_group_decide(f, g, **kwargs).status
