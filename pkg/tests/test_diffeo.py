from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffconj._kernels import to_mpf
from diffconj.diffeo import (
    DiffeoSpec,
    NotADiffeomorphism,
    SpecError,
    certified_equal_jets,
    certified_involution,
    check_consistency,
    degree_of,
    fixed_point_of,
    jet_of,
    load_spec,
    normalize_to_origin,
    parse_spec,
    rational_identity,
    reflect,
    square_jet,
)
from diffconj.expr import X, evaluate, parse_expression
from diffconj.series import TruncatedSeries, comp_power, multiplier

T = TruncatedSeries
P = parse_expression


def spec(text, degree=-1, **kw):
    return DiffeoSpec(degree=degree, body=P(text), **kw)


class TestSpecFiles:
    def test_full_file(self, tmp_path):
        path = tmp_path / "cubic.spec"
        path.write_text(
            "# a cubic\n"
            "degree = -1\n"
            'expr = "-x - x^3"   # trailing comment\n'
            "jet = [-1, 0, -1]\n"
            "fixed_point = 0\n"
            "topology = boundary\n"
            "order = 8\n"
        )
        d = load_spec(path)
        assert d.name == "cubic"
        assert d.jet == T([-1, 0, -1], 8)
        assert d.topology == "boundary" and d.order == 8
        check_consistency(d)

    def test_defaults(self):
        d = parse_spec("degree = -1\nexpr = 1 - x\n")
        assert d.topology == "unknown" and d.order == 16 and d.fixed_point is None

    def test_long_jet_raises_order(self):
        d = parse_spec("degree = -1\njet = [" + ", ".join(["-1"] + ["0"] * 19) + "]\n")
        assert d.order == 20

    @pytest.mark.parametrize(
        "text",
        [
            "expr = -x\n",
            "degree = 2\nexpr = -x\n",
            "degree = -1\n",
            "degree = -1\nexpr = -x\ncolour = red\n",
            "degree = -1\nexpr = -x\nexpr = 1 - x\n",
            "degree = -1\njet = [1, 2]\n",
            "degree = -1\nexpr = -x\ntopology = sideways\n",
            "degree = -1\nexpr = -x\nradius = -1\n",
            "degree = -1\njet = [-1, 0, 0]\norder = 2\n",
            "degree = -1\nexpr -x\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises((SpecError, ValueError)):
            parse_spec(text)

    def test_inconsistent_jet(self):
        d = parse_spec('degree = -1\nexpr = "-x - x^3"\njet = [-1, 0, 1]\n')
        with pytest.raises(SpecError):
            check_consistency(d)


class TestDegree:
    def test_examples(self):
        assert degree_of(spec("-x - x^3")) == -1
        assert degree_of(spec("x + sinh(x)", degree=1)) == 1

    def test_vanishing_derivative(self):
        with pytest.raises(NotADiffeomorphism):
            degree_of(spec("-x + x^3"))

    def test_wrong_declaration(self):
        with pytest.raises(SpecError):
            degree_of(spec("x + x^3"))


class TestFixedPoint:
    def test_examples(self):
        assert fixed_point_of(spec("-x")) == 0
        assert fixed_point_of(spec("1 - x")) == Fraction(1, 2)
        assert fixed_point_of(spec("-x - x^3")) == 0

    def test_solved_exactly_when_rational(self):
        assert fixed_point_of(spec("2 - x - (x - 1)^3")) == 1

    def test_bad_declaration(self):
        with pytest.raises(SpecError):
            fixed_point_of(spec("1 - x", fixed_point=Fraction(1, 3)))

    @given(st.fractions(min_value=-5, max_value=5, max_denominator=9))
    def test_transcendental(self, c):
        d = spec(f"({c}) - x - sinh(x)/2")
        p = to_mpf(fixed_point_of(d))
        assert abs(to_mpf(evaluate(d.body, p)) - p) < 1e-40


class TestNormalize:
    def test_involution(self):
        n = normalize_to_origin(spec("1 - x"))
        assert n.fixed_point == 0 and n.body == -X
        assert jet_of(n) == T([-1], 16)

    def test_already_at_origin(self):
        d = spec("-x - x^3")
        n = normalize_to_origin(d)
        assert n.body == d.body

    def test_translated(self):
        d = spec("3 - x")
        assert fixed_point_of(d) == Fraction(3, 2)
        assert evaluate(normalize_to_origin(d).body, 0) == 0

    def test_idempotent(self):
        n = normalize_to_origin(spec("2 - x - (x - 1)^3"))
        assert normalize_to_origin(n) == n
        assert jet_of(n) == T([-1, 0, -1], 16)


class TestSquareJet:
    def test_examples(self):
        assert square_jet(spec("-x")) == T.identity(16)
        assert square_jet(spec("-x - x^3", order=4)) == T([1, 0, 2, 0])

    @given(st.fractions(min_value=-3, max_value=3, max_denominator=4))
    def test_multiplier_positive(self, a):
        d = spec(f"-2*x + ({a})*x^2 - x^3", order=6)
        assert multiplier(square_jet(d)) == multiplier(jet_of(d)) ** 2 > 0


class TestCertificates:
    def test_rational_identity(self):
        assert rational_identity(P("(x^2 - 1)/(x - 1)"), P("x + 1"))
        assert not rational_identity(P("x^3"), P("x^3 + x^4"))
        assert not rational_identity(P("exp(x)"), P("exp(x)"))

    def test_involution(self):
        assert certified_involution(spec("1 - x"))
        assert certified_involution(spec("(1 - x)/(1 + x)"))
        assert not certified_involution(spec("-x - x^3"))

    def test_equal_jets(self):
        a = DiffeoSpec(degree=-1, jet=T([-1, 1]))
        b = DiffeoSpec(degree=-1, jet=T([-1, 1, 0]))
        assert certified_equal_jets(a, b)
        assert not certified_equal_jets(spec("-sinh(x)"), spec("-sinh(x)"))

    def test_reflect(self):
        d = spec("-x + x^2/4", order=4)
        r = reflect(d)
        assert evaluate(r.body, Fraction(1, 3)) == -evaluate(d.body, Fraction(-1, 3))
        j = DiffeoSpec(degree=-1, jet=T([-1, 2, 3]))
        assert reflect(j).jet == T([-1, -2, 3], 16)
