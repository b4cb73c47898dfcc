import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffconj.dynamics import comp_square_root
from diffconj.expr import DomainError, X, parse_expression
from diffconj.randgen import random_rational, random_series, seeded_rng
from diffconj.series import TruncatedSeries, comp_power
from diffconj.suites import SUITES, run_suite
from diffconj.verify import (
    SAMPLE_VALUES,
    brute_force_classify,
    brute_force_square_roots,
    check_conjugacy_numeric,
    check_maps_close,
    family_agrees,
    grid,
)

T = TruncatedSeries
P = parse_expression


class TestGridCheck:
    def test_identity_conjugator(self):
        f = P("-x - x^3")
        assert check_conjugacy_numeric(f, f, X).max_residual == 0

    def test_involution_certificate(self):
        report = check_conjugacy_numeric(P("-x"), P("1 - x"), P("x + 1/2"), (-10, 10), 2001)
        assert report.passed and report.max_residual == 0

    def test_calibration(self):
        # a certificate off by 1e-10 on part of the interval must be caught
        bad = P("x + 1/2 + 10^(-10)*x^2*plateau(1, x - 1)")
        report = check_conjugacy_numeric(P("-x"), P("1 - x"), bad, (-2, 2), 1001)
        assert not report.passed
        assert report.max_residual > mpmath.mpf("1e-12")

    def test_squares_distinguish(self):
        rng = random.Random(11)
        for _ in range(10):
            a, b = (Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(2))
            h = P(f"{a}*x + {b}*x^3 + {b}")
            assert not check_conjugacy_numeric(P("-x"), P("-x - x^3"), h, (-2, 2), 101).passed

    def test_needs_monotone(self):
        with pytest.raises(DomainError):
            check_conjugacy_numeric(P("-x"), P("-x"), P("x^2"))

    def test_maps_close(self):
        assert check_maps_close(P("(x^2 - 1)/(x - 1/3)*(x - 1/3)"), P("x^2 - 1")).passed

    def test_grid(self):
        assert grid((-1, 1), 5) == [-1, Fraction(-1, 2), 0, Fraction(1, 2), 1]
        with pytest.raises(ValueError):
            grid((1, -1), 5)


class TestBruteForce:
    def test_involutions_order3(self):
        roots = set(brute_force_square_roots(T.identity(3), -1))
        assert roots == {T([-1, a, -a * a]) for a in SAMPLE_VALUES}

    def test_linear(self):
        assert brute_force_square_roots(T([4], 3), 2) == [T([2], 3)]

    def test_identity_is_a_root(self):
        assert T.identity(3) in brute_force_square_roots(T.identity(3), 1)

    def test_inconsistent(self):
        oracle = brute_force_classify(T([1, 1]), -1)
        assert oracle.roots == () and oracle.labels == ("inconsistent",)

    def test_order_limit(self):
        with pytest.raises(ValueError):
            brute_force_classify(T.identity(9), -1)

    @given(st.integers(2, 6), st.integers(0, 10**6))
    def test_agrees_with_solver(self, n, seed):
        rng = seeded_rng(seed)
        F = T([-1] + [rng.choice(SAMPLE_VALUES) for _ in range(n - 1)], n)
        S = comp_power(F, 2)
        ok, reason = family_agrees(comp_square_root(S, -1), S, -1)
        assert ok, reason


class TestRandgen:
    def test_seeded(self):
        a = [random_rational(seeded_rng(0)) for _ in range(3)]
        assert a == [random_rational(seeded_rng(0)) for _ in range(3)]
        assert random_series(seeded_rng(0), 8) == random_series(seeded_rng(0), 8)
        assert random_series(seeded_rng(0), 8) != random_series(seeded_rng(1), 8)


class TestSuites:
    @pytest.mark.parametrize("name", list(SUITES))
    def test_small_run_passes(self, name):
        result = run_suite(name, seed=3, cases=8)
        assert result.passed, result.failures
        assert result.seed == 3 and f"seed=3" in result.line()

    def test_deterministic(self):
        a = run_suite("lemma-square", seed=5, cases=20).to_dict()
        assert a == run_suite("lemma-square", seed=5, cases=20).to_dict()

    def test_unknown(self):
        with pytest.raises(KeyError):
            run_suite("nope")
