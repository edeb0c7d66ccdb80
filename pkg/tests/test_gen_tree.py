import pytest
from hypothesis import given, strategies as st

from quartic_sheffer.gen_tree import (
    NodeBudgetExceeded,
    counts_to_level,
    enumerate_explicit,
    productions,
    root_level,
    step_level,
    verify_interpretation,
)
from quartic_sheffer.poly_core import Params, build_explicit


def test_first_levels():
    p = Params(2, -3)
    l1 = step_level(root_level(), p)
    assert l1.as_list() == [0, 1]
    l2 = step_level(l1, p)
    assert l2.as_list() == [4, 0, 1]
    l4 = counts_to_level(4, p)[4]
    assert l4.as_list() == [12 * 4 + 24 * -3, 0, 24, 0, 1]


def test_productions_rule():
    assert productions(4, Params(1, -2)) == [(1, 24 * -2 * 4), (3, 8), (5, 1)]


def test_worked_example_marked_counts():
    levels = enumerate_explicit(4, Params(1, -1))
    l4 = levels[4]
    assert l4.unmarked[0] == 12 and l4.marked[0] == 24
    assert l4.get(0) == -12


@pytest.mark.parametrize("ab", [(1, -1), (3, -2), (1, 0)])
def test_interpretation(ab):
    rep = verify_interpretation(20, Params(*ab))
    assert rep.ok and rep.first_mismatch is None
    assert rep.hypothesis_met == (ab[1] < 0)


def test_explicit_matches_signed_to_six():
    p = Params(1, -1)
    for lvl, fast in zip(enumerate_explicit(6, p), counts_to_level(6, p)):
        assert lvl.as_list() == fast.as_list()


def test_budget_refusal():
    with pytest.raises(NodeBudgetExceeded):
        enumerate_explicit(12, Params(3, -3), budget=1000)


@given(st.integers(0, 4), st.integers(-4, 0), st.integers(0, 18))
def test_levels_are_coefficients(a, b, n):
    p = Params(a, b)
    lvl = counts_to_level(n, p)[n]
    poly = build_explicit(n, p)
    assert lvl.as_list() == [poly[k] for k in range(n + 1)]
    assert lvl.get(n) == 1
