from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.errors import DomainError
from zetaforms.exact import (
    TruncatedSeries,
    factorial,
    harmonic_power_sum,
    log2_fraction,
    pochhammer,
)

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=50
)


def test_factorial_trivia():
    assert factorial(0) == 1  # empty product
    assert factorial(5) == 120
    with pytest.raises(DomainError):
        factorial(-1)


def test_factorial_33_against_product_loop():
    # independent oracle: naive repeated multiplication
    expected = 1
    for i in range(1, 34):
        expected *= i
    assert factorial(33) == expected


def test_pochhammer_trivia():
    assert pochhammer(Fraction(7, 2), 0) == 1
    assert pochhammer(2, 3) == 24  # 2*3*4
    assert pochhammer(-3, 5) == 0  # hits the zero factor at -3+3


@settings(max_examples=60, deadline=None)
@given(rationals, st.integers(0, 12), st.integers(0, 12))
def test_pochhammer_composition(a, p, q):
    assert pochhammer(a, p + q) == pochhammer(a, p) * pochhammer(a + p, q)


def test_harmonic_trivia():
    assert harmonic_power_sum(0, 5) == 0
    assert harmonic_power_sum(3, 2) == Fraction(49, 36)


def test_harmonic_54_12_reverse_order_oracle():
    # independent oracle: summation in the opposite order
    expected = Fraction(0)
    for l in range(54, 0, -1):
        expected += Fraction(1, l**12)
    assert harmonic_power_sum(54, 12) == expected


@settings(max_examples=80, deadline=None)
@given(rationals, rationals)
def test_rational_add_mul_roundtrip(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a


def test_series_mul_trivia():
    one_plus = TruncatedSeries.from_coeffs([1, 1], 2)
    one_minus = TruncatedSeries.from_coeffs([1, -1], 2)
    assert (one_plus * one_minus).coeffs == (1, 0, -1)
    a = TruncatedSeries.from_coeffs([3, 5, 7], 2)
    assert a * TruncatedSeries.constant(1, 2) == a
    sq = TruncatedSeries.from_coeffs([1, 1, 1], 2)
    assert (sq * sq).coeffs == (1, 2, 3)


def test_series_inverse_trivia():
    geom = TruncatedSeries.from_coeffs([1, -1], 2).inverse()
    assert geom.coeffs == (1, 1, 1)
    c = TruncatedSeries.constant(Fraction(5, 3), 4)
    assert c.inverse() == TruncatedSeries.constant(Fraction(3, 5), 4)


def test_series_errors():
    with pytest.raises(DomainError):
        TruncatedSeries.constant(1, 2) * TruncatedSeries.constant(1, 3)
    with pytest.raises(DomainError):
        TruncatedSeries.from_coeffs([0, 1], 3).inverse()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(rationals, min_size=1, max_size=6),
    st.integers(1, 8),
)
def test_series_inverse_roundtrip(coeffs, order):
    if coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    a = TruncatedSeries.from_coeffs(coeffs, order)
    product = a * a.inverse()
    assert product == TruncatedSeries.constant(1, order)


def test_mul_linear_matches_full_mul():
    a = TruncatedSeries.from_coeffs([2, 3, 5, 7], 3)
    lin = TruncatedSeries.from_coeffs([4, -9], 3)
    assert a.mul_linear(4, -9) == a * lin


def test_log2_fraction_huge():
    x = Fraction(10**500, 3)
    assert abs(log2_fraction(x) - (500 * 3.321928094887362 - 1.584962500721156)) < 1e-6
