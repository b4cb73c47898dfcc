from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffconj.series import (
    NotInvertible,
    OrderMismatch,
    SeriesError,
    TruncatedSeries,
    comp_inverse,
    comp_power,
    compose,
    conjugate,
    deviation_index,
    equals_mod,
    format_literal,
    multiplier,
    parse_literal,
)

from conftest import rationals, series, series_pair

T = TruncatedSeries


def poly_compose(a, b, n):
    """Expand a(b(x)) as plain polynomials, then truncate."""
    a = [Fraction(0)] + list(a)
    b = [Fraction(0)] + list(b)
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, len(a)):
        nxt = [Fraction(0)] * (n + 1)
        for i, u in enumerate(power):
            for j in range(1, min(len(b), n + 1 - i)):
                nxt[i + j] += u * b[j]
        power = nxt
        for m in range(n + 1):
            out[m] += a[k] * power[m]
    return out[1:]


class TestCompose:
    def test_identity_on_left(self):
        S = T([3, -1, Fraction(1, 2)])
        assert compose(T.identity(3), S) == S

    def test_linear(self):
        assert compose(T([2], 4), T([3], 4)) == T([6], 4)

    def test_hand_expansion(self):
        assert compose(T([1, 1, 0]), T([1, 0, 1])) == T([1, 1, 1])

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatch):
            compose(T([1, 1]), T([1, 1, 1]))

    @given(series_pair())
    def test_matches_polynomial_expansion(self, pair):
        S, U = pair
        assert list(compose(S, U).coeffs) == poly_compose(S.coeffs, U.coeffs, S.order)

    @given(st.integers(1, 7).flatmap(lambda n: st.tuples(series(order=n), series(order=n), series(order=n))))
    def test_associative(self, triple):
        A, B, C = triple
        assert compose(A, compose(B, C)) == compose(compose(A, B), C)

    @given(series())
    def test_identity_both_sides(self, S):
        X = T.identity(S.order)
        assert compose(S, X) == S == compose(X, S)


class TestInverse:
    def test_linear(self):
        assert comp_inverse(T([2], 3)) == T([Fraction(1, 2)], 3)

    def test_hand_solved(self):
        assert comp_inverse(T([1, 1], 3)) == T([1, -1, 2])

    def test_identity(self):
        assert comp_inverse(T.identity(5)) == T.identity(5)

    def test_zero_multiplier(self):
        with pytest.raises(NotInvertible):
            comp_inverse(T([0, 1]))

    @given(series())
    def test_two_sided(self, S):
        X = T.identity(S.order)
        inv = comp_inverse(S)
        assert compose(S, inv) == X == compose(inv, S)


class TestPower:
    def test_minus_x_is_involution(self):
        assert comp_power(T([-1], 5), 2) == T.identity(5)

    def test_linear(self):
        assert comp_power(T([2], 3), 3) == T([8], 3)

    def test_cubic_square(self):
        assert comp_power(T([-1, 0, -1, 0]), 2) == T([1, 0, 2, 0])

    @given(series(max_order=6), st.integers(-3, 3))
    def test_matches_repeated_composition(self, S, k):
        expected = T.identity(S.order)
        step = S if k >= 0 else comp_inverse(S)
        for _ in range(abs(k)):
            expected = compose(step, expected)
        assert comp_power(S, k) == expected


class TestConjugate:
    def test_by_identity(self):
        S = T([-2, 1, 5])
        assert conjugate(S, T.identity(3)) == S

    def test_hand_expansion(self):
        result = conjugate(T([-1], 3), T([1, 1], 3))
        assert result == T([-1, -2, -4])
        assert comp_power(result, 2) == T.identity(3)

    @given(rationals.filter(bool), series())
    def test_multiplier_invariant(self, lam, W):
        assert multiplier(conjugate(T([lam], W.order), W)) == lam


class TestSmallOps:
    def test_multiplier(self):
        assert multiplier(T([-2, 0, 0, 0, 1])) == -2
        assert multiplier(T.identity(4)) == 1

    @given(series_pair())
    def test_multiplier_homomorphism(self, pair):
        S, U = pair
        assert multiplier(compose(S, U)) == multiplier(S) * multiplier(U)

    def test_deviation_index(self):
        assert deviation_index(T([-1, 0, 0, 3])) == 4
        assert deviation_index(T.identity(6)) is None
        assert deviation_index(comp_power(T([-1, 0, -1, 0]), 2)) == 3

    def test_equals_mod(self):
        S = T([1, 0, 0, 0, 1])
        X = T.identity(5)
        assert equals_mod(S, X, 4)
        assert not equals_mod(S, X, 5)
        assert equals_mod(S, S, 5)
        with pytest.raises(OrderMismatch):
            equals_mod(S, X, 6)


class TestLiterals:
    def test_parse(self):
        assert parse_literal("[1, -1/2, 0.25]") == [1, Fraction(-1, 2), Fraction(1, 4)]

    @pytest.mark.parametrize("bad", ["1, 2", "[]", "[1, x]", "[1/0]"])
    def test_rejects(self, bad):
        with pytest.raises(SeriesError):
            parse_literal(bad)

    @given(series())
    def test_round_trip(self, S):
        assert T(parse_literal(format_literal(S.coeffs))) == S
        assert T.from_literal(S.to_literal()) == S

    def test_coefficients_stay_exact(self):
        S = comp_inverse(T([3, 1, 1]))
        assert all(isinstance(c, Fraction) for c in S.coeffs)
