from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quartic_sheffer.poly_core import Params, build_explicit
from quartic_sheffer.riordan import (
    ProductionMatrix,
    RiordanMatrix,
    build_riordan,
    commutation_check,
    identity,
    inverse_identity_check,
    invert,
    matmul,
    production_identity_check,
)


def test_rows_are_coefficients():
    p = Params(1, -1)
    A = build_riordan(12, p)
    for n in range(12):
        poly = build_explicit(n, p)
        assert [A[n, k] for k in range(n + 1)] == [poly[k] for k in range(n + 1)]
        assert A[n, n] == 1
        assert all(A[n, k] == 0 for k in range(n + 1) if (n - k) % 2)


def test_production_entries():
    P = ProductionMatrix(8, Params(3, -2)).rows()
    assert P[2][3] == 1
    assert P[4][3] == 2 * 3 * 4
    assert P[5][2] == 24 * -2 * 10
    assert P[4][0] == 0 and P[3][3] == 0


@pytest.mark.parametrize("ab", [(1, -1), (0, 0), (2, -3), (Fraction(1, 2), Fraction(5, 3))])
def test_identities_at_twenty(ab):
    p = Params(*ab)
    for rep in (production_identity_check(20, p), inverse_identity_check(20, p), commutation_check(20, p)):
        assert rep.equal, rep


def test_trivial_parameters_give_identity():
    A = build_riordan(10, Params(0, 0))
    assert A.rows() == identity(10)


def test_inverse_is_two_sided():
    A = build_riordan(15, Params(2, -1))
    Ai = invert(A)
    assert matmul(A.rows(), Ai.rows()) == identity(15)
    assert matmul(Ai.rows(), A.rows()) == identity(15)
    # inverse of [g, z] is [1/g, z], i.e. parameters negated
    assert Ai.rows() == build_riordan(15, Params(-2, 1)).rows()


def test_invert_rejects_non_unit_diagonal():
    with pytest.raises(ValueError):
        invert(RiordanMatrix.from_rows([[Fraction(2), Fraction(0)], [Fraction(1), Fraction(1)]]))


def test_rejects_upper_entries():
    with pytest.raises(ValueError):
        RiordanMatrix.from_rows([[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]])


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_production_identity_property(a, b):
    assert production_identity_check(9, Params(a, b)).equal
