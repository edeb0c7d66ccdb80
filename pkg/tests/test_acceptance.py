"""Acceptance battery at full scale, one test and one printed line per criterion.

Run directly for the pass/fail matrix alone: ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from quartic_sheffer import acceptance as A

CRITERIA = [
    A.route_equivalence,
    A.derivative_identity,
    A.riordan_identities,
    A.tree_interpretation,
    A.zero_locus_criterion,
    A.reduction_criterion,
    A.saddle_criterion,
    A.oracle_criterion,
    A.asymptotic_criterion,
    A.falsification_criterion,
]


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}_{c.__name__}" for i, c in enumerate(CRITERIA, 1)])
def test_criterion(criterion, capsys):
    result = criterion(A.Scale())
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


@pytest.mark.slow
def test_positive_b_locus_is_informational(capsys):
    result = A.zero_locus_criterion(A.Scale(), grid=[(1, 1)])
    with capsys.disabled():
        print("\n" + result.line())
    assert result.status == "HYPOTHESIS_NOT_MET"
    assert result.passed


if __name__ == "__main__":
    results = A.run_all(A.Scale())
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
