from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from quartic_sheffer.poly_core import (
    ExactPoly,
    Params,
    as_fraction,
    build_explicit,
    build_recurrence,
    c_coeff,
    coefficient,
    derivative,
    evaluate,
    gf_coefficient,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
params = st.builds(Params, rationals, rationals)


def test_params_exact_and_hypothesis_flag():
    p = Params("1/3", -2)
    assert p.a == Fraction(1, 3) and p.b == -2
    assert p.locus_hypothesis and not p.is_integral
    assert not Params(1, 0).locus_hypothesis


@pytest.mark.parametrize("bad", [0.5, True, None, "x"])
def test_as_fraction_rejects(bad):
    with pytest.raises((TypeError, ValueError)):
        as_fraction(bad)


def test_c_coefficients_small():
    a, b = Fraction(3, 2), Fraction(-5, 7)
    p = Params(a, b)
    assert c_coeff(0, p) == 1
    assert c_coeff(1, p) == a
    assert c_coeff(2, p) == a**2 / 2 + b
    assert c_coeff(3, p) == a**3 / 6 + a * b


def test_coefficient_table():
    a, b = Fraction(2), Fraction(-3)
    p = Params(a, b)
    assert coefficient(2, 0, p) == 2 * a
    assert coefficient(4, 2, p) == 12 * a
    assert coefficient(5, 1, p) == 60 * (a**2 + 2 * b)
    assert coefficient(5, 3, p) == 20 * a
    assert all(coefficient(n, n, p) == 1 for n in range(12))
    assert coefficient(5, 2, p) == 0
    with pytest.raises(ValueError):
        coefficient(3, 4, p)


def test_low_degree_polynomials():
    a, b = Fraction(3), Fraction(-2)
    p = Params(a, b)
    assert build_explicit(0, p) == ExactPoly([1])
    assert build_explicit(1, p) == ExactPoly([0, 1])
    assert build_explicit(2, p) == ExactPoly([2 * a, 0, 1])
    assert build_explicit(3, p) == ExactPoly([0, 6 * a, 0, 1])
    assert build_explicit(4, p) == ExactPoly([12 * a**2 + 24 * b, 0, 12 * a, 0, 1])


def test_p4_at_unit_parameters():
    p4 = build_explicit(4, Params(1, -1))
    assert [p4[k] for k in range(5)] == [-12, 0, 12, 0, 1]
    assert evaluate(p4, 1) == 1


def test_evaluate_paths():
    p = Params(5, -1)
    assert evaluate(build_explicit(2, p), 0) == 10
    assert evaluate(build_explicit(1, p), Fraction(7, 3)) == Fraction(7, 3)
    assert evaluate(build_explicit(4, p), 1.0) == pytest.approx(1 + 60 + 300 - 24)
    assert isinstance(evaluate(build_explicit(3, p), mpmath.mpf(2)), mpmath.mpf)


def test_derivative_of_constant_is_zero():
    assert derivative(build_explicit(0, Params(1, -1))).is_zero


def test_recurrence_matches_explicit_to_sixty():
    p = Params(2, -3)
    rec = build_recurrence(60, p)
    assert len(rec) == 61
    assert all(rec[n] == build_explicit(n, p) for n in range(61))


def test_frozen_large_coefficient():
    # 20! [z^20] exp(z^2 - z^4), cross-checked with a CAS series expansion
    assert build_explicit(20, Params(1, -1))[0] == 15145968162124800


@given(params, st.integers(0, 25))
def test_monic_and_parity(p, n):
    poly = build_explicit(n, p)
    assert poly[n] == 1 and poly.degree == n
    assert all(poly[k] == 0 for k in range(n + 1) if (n - k) % 2)


@given(params, st.integers(1, 25))
def test_derivative_identity(p, n):
    assert derivative(build_explicit(n, p)) == build_explicit(n - 1, p).scale(n)


@given(params, st.integers(0, 20), rationals)
def test_generating_function_route(p, n, x):
    assert gf_coefficient(n, p, x) == evaluate(build_explicit(n, p), x)


@given(params, st.integers(0, 20), rationals)
def test_reflection(p, n, x):
    # P_n(-x) = (-1)^n P_n(x)
    poly = build_explicit(n, p)
    assert evaluate(poly, -x) == (-1) ** n * evaluate(poly, x)


@given(st.integers(0, 20), rationals, rationals)
def test_b_equal_zero_matches_hermite_type(n, a, x):
    # exp(xz + az^2) gives P_{n+1} = x P_n + 2 a n P_{n-1}
    p = Params(a, 0)
    if n >= 1:
        lhs = build_explicit(n + 1, p)
        rhs = build_explicit(n, p).shift() + build_explicit(n - 1, p).scale(2 * a * n)
        assert lhs == rhs
