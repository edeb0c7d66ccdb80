from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from quartic_sheffer.poly_core import ExactPoly, Params, build_explicit
from quartic_sheffer.zero_locus import (
    RootClass,
    RootFindingError,
    aberth,
    certify_theorem,
    classify,
    find_roots,
    reduce_parity,
    symmetry_closed,
    w_roots_real,
)


def test_classify_examples():
    assert classify(1.5) is RootClass.REAL
    assert classify(2.3j) is RootClass.IMAGINARY
    assert classify(1 + 1j, 1e-10) is RootClass.OFF_AXIS
    assert classify(0) is RootClass.ORIGIN
    assert classify(mpmath.mpc(3, 1e-14)) is RootClass.REAL


def test_p2_roots_imaginary():
    rs = find_roots(build_explicit(2, Params(1, 7)))
    assert set(rs.classes) == {RootClass.IMAGINARY}
    assert sorted(float(mpmath.im(r)) for r in rs.roots) == pytest.approx([-2**0.5, 2**0.5], abs=1e-15)


def test_p4_pure_quartic():
    rs = find_roots(build_explicit(4, Params(0, -1)))
    r = 24**0.25
    got = sorted(complex(z).real + 10 * complex(z).imag for z in rs.roots)
    assert got == pytest.approx(sorted([r, -r, 10 * r, -10 * r]), abs=1e-13)
    assert rs.counts()["REAL"] == 2 and rs.counts()["IMAGINARY"] == 2


def test_p1_origin():
    rs = find_roots(build_explicit(1, Params(1, -1)))
    assert rs.classes == [RootClass.ORIGIN]


def test_odd_degree_origin_deflated():
    rs = find_roots(build_explicit(7, Params(2, -1)))
    assert len(rs.roots) == 7 and rs.parity == 1 and rs.origin_order == 0
    assert rs.classes.count(RootClass.ORIGIN) == 1


def test_origin_multiplicity_stripped():
    red = reduce_parity(ExactPoly([0, 0, 0, 0, 0, -3, 0, 1]))
    assert (red.parity, red.origin_order, red.q) == (1, 2, ExactPoly([-3, 1]))
    rs = find_roots(ExactPoly([0, 0, 0, 0, 0, -3, 0, 1]))
    assert rs.classes.count(RootClass.ORIGIN) == 5


def test_parity_reduction_roundtrip():
    poly = build_explicit(9, Params(1, -3))
    red = reduce_parity(poly)
    assert red.parity == 1 and red.rebuild() == poly
    with pytest.raises(ValueError):
        reduce_parity(ExactPoly([1, 1, 1]))


def test_residuals_within_reported_bound():
    rs = find_roots(build_explicit(40, Params(5, -3)))
    assert all(r <= b for r, b in zip(rs.residuals, rs.residual_bounds))
    assert symmetry_closed(rs, 1e-8)
    assert w_roots_real(rs, 1e-8)


def test_certify_unit_parameters():
    rep = certify_theorem(30, Params(1, -1), tol=1e-8)
    assert rep.verdict == "certified" and not rep.off_axis


def test_certify_zero_a():
    rep = certify_theorem(30, Params(0, -1), tol=1e-8, workers=2)
    assert rep.certified
    assert [r.n for r in rep.results] == list(range(1, 31))


def test_positive_b_is_informational():
    rep = certify_theorem(8, Params(1, 1), tol=1e-8)
    assert rep.off_axis
    assert rep.verdict == "hypothesis not met"


def test_aberth_reports_failure():
    with pytest.raises(RootFindingError) as info:
        aberth(build_explicit(30, Params(1, -1)), precision=64, max_iter=1)
    assert info.value.best_iterate is not None


@given(st.integers(1, 20), st.integers(0, 5), st.integers(-5, -1))
def test_root_count_and_locus(n, a, b):
    rs = find_roots(build_explicit(n, Params(a, b)), tol=1e-8)
    assert len(rs.roots) == n
    assert not rs.off_axis
