from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffconj.dynamics import (
    CONSTRAINT,
    DETERMINED,
    FREE,
    INCONSISTENT,
    NotCommuting,
    ResonantMultiplier,
    commutes,
    comp_square_root,
    is_involutive,
    koenigs_linearize,
    lubin_form,
    random_involution,
    random_reversible,
    square_deviation,
)
from diffconj.randgen import random_series, seeded_rng
from diffconj.series import SeriesError, TruncatedSeries, comp_inverse, comp_power, conjugate, deviation_index

from conftest import nonzero_rationals, rationals, series

T = TruncatedSeries


class TestInvolutions:
    def test_minus_x(self):
        assert is_involutive(T([-1], 8))

    def test_one_parameter_family(self):
        # S o S = X solved by hand through X^3: -X + aX^2 - a^2 X^3
        for a in (1, Fraction(-2, 3), 5):
            assert is_involutive(T([-1, a, -a * a]))

    def test_cubic_is_not(self):
        assert not is_involutive(T([-1, 0, -1, 0]))

    def test_square_deviation(self):
        assert square_deviation(T([-1], 6)) is None
        assert square_deviation(T([-1, 0, -1, 0])) == 3
        assert square_deviation(T([-1, 1, 0, 0])) == 3

    @given(series(multiplier=-1, min_order=2, max_order=10))
    def test_square_deviation_is_odd(self, S):
        dev = square_deviation(S)
        assert dev is None or dev % 2 == 1

    @given(series(multiplier=-1, order=10))
    def test_square_agrees_one_step_further(self, S):
        sq, X = comp_power(S, 2), T.identity(10)
        for m in range(1, 6):
            if equals_through(sq, X, 2 * m - 1):
                assert equals_through(sq, X, 2 * m)


def equals_through(S, U, m):
    return all(S[k] == U[k] for k in range(1, m + 1))


class TestSquareRoot:
    def test_involution_family(self):
        fam = comp_square_root(T.identity(3), -1)
        assert fam.kind == "family"
        assert fam.free_indices == (2,)
        assert fam.labels == (FREE, DETERMINED)
        for a in (0, 1, Fraction(-3, 2)):
            assert fam.member({2: a}) == T([-1, a, -a * a])

    def test_linear_unique(self):
        fam = comp_square_root(T([4], 3), 2)
        assert fam.is_unique and fam.witness == T([2], 3)

    def test_contains_cubic(self):
        fam = comp_square_root(T([1, 0, 2]), -1)
        assert fam.contains(T([-1, 0, -1]))
        assert comp_power(fam.witness, 2) == T([1, 0, 2])

    def test_inconsistent(self):
        fam = comp_square_root(T([1, 1, 0, 0]), -1)
        assert fam.kind == "empty"
        assert INCONSISTENT in fam.labels
        with pytest.raises(SeriesError):
            fam.member()

    def test_constraint_pins_earlier_parameter(self):
        F = T([-1, 1, 0, 0, 0, 0])
        fam = comp_square_root(comp_power(F, 2), -1)
        assert CONSTRAINT in fam.labels
        assert fam.contains(F)

    def test_multiplier_must_square(self):
        with pytest.raises(SeriesError):
            comp_square_root(T([2], 3), -1)

    @given(series(multiplier=-1, min_order=2, max_order=7))
    def test_every_root_squares_back(self, F):
        fam = comp_square_root(comp_power(F, 2), -1)
        assert fam.contains(F)
        values = {n: Fraction(n, 3) for n in fam.free_indices}
        assert comp_power(fam.member(values), 2) == comp_power(F, 2)

    @given(st.sampled_from([-2, -3, Fraction(-1, 2), 2, 3]), st.integers(2, 8), st.data())
    def test_hyperbolic_root_is_unique(self, lam, n, data):
        G = data.draw(series(order=n, multiplier=Fraction(lam)))
        fam = comp_square_root(comp_power(G, 2), lam)
        assert fam.is_unique and fam.witness == G


class TestKoenigs:
    def test_linear(self):
        assert koenigs_linearize(T([2], 4)) == T.identity(4)

    def test_hand_solved(self):
        assert koenigs_linearize(T([2, 1])) == T([1, Fraction(1, 2)])

    def test_random_minus_two(self):
        rng = seeded_rng(7)
        S = random_series(rng, 12, multiplier=-2)
        assert conjugate(S, koenigs_linearize(S)) == T([-2], 12)

    @given(nonzero_rationals.filter(lambda q: abs(q) != 1), st.integers(1, 8), st.data())
    def test_residual_vanishes(self, lam, n, data):
        S = data.draw(series(order=n, multiplier=lam))
        W = koenigs_linearize(S)
        assert W[1] == 1
        assert conjugate(S, W) == T([lam], n)

    @pytest.mark.parametrize("lam", [1, -1])
    def test_unit_multiplier_rejected(self, lam):
        with pytest.raises(ResonantMultiplier):
            koenigs_linearize(T([lam, 1], 3))


class TestLubinCommutes:
    def test_identity(self):
        assert lubin_form(T.identity(6), T([1, 0, 1, 0, 0, 0])) == 0

    def test_square(self):
        S = T([1, 0, 1, 0, 0, 0])
        assert lubin_form(comp_power(S, 2), S) == 2

    def test_self(self):
        S = T([1, 0, 0, Fraction(3, 4), 0, 1, 0])
        assert lubin_form(S, S) == Fraction(3, 4)

    def test_needs_commuting(self):
        with pytest.raises(NotCommuting):
            lubin_form(T([1, 1, 0, 0]), T([1, 0, 1, 0]))

    def test_commutes(self):
        S = T([1, 2, -1])
        assert commutes(S, comp_power(S, 2))
        assert commutes(T([2], 3), T([3], 3))
        assert not commutes(T([-1], 3), T([1, 1], 3))


class TestReversible:
    def test_same_involution_gives_identity(self):
        tau = random_involution(seeded_rng(3), 8)
        assert comp_power(tau, 2) == T.identity(8)

    @given(st.integers(0, 2**32))
    def test_even_deviation_and_reversed(self, seed):
        Q, tau1 = random_reversible(seed, 10, with_reverser=True)
        dev = deviation_index(Q)
        assert dev is None or dev % 2 == 0
        assert conjugate(Q, tau1) == comp_inverse(Q)

    def test_seeded(self):
        assert random_reversible(5, 8) == random_reversible(5, 8)
        assert random_reversible(5, 8) != random_reversible(6, 8)
