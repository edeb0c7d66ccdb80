"""Marked generating tree whose signed label counts are the coefficients of P_n.

Succession rule (root (0)):

    (k)    -> (k-3 marked)^{24|b| C(k,3)} (k-1)^{2ak} (k+1)
    (k bar)-> (k-3)^{24|b| C(k,3)} (k-1 bar)^{2ak} (k+1 bar)

A node labelled k and a marked node labelled k at the same level cancel, so
only signed counts mu_n(k) - mu_n(k bar) are propagated by default: one level
step is the production matrix B + U applied to the count vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .poly_core import Params, build_recurrence

NODE_BUDGET = 10**6


@dataclass
class TreeLevelCounts:
    level: int
    signed_counts: dict[int, Fraction]
    unmarked: Optional[dict[int, int]] = None
    marked: Optional[dict[int, int]] = None

    def get(self, k: int) -> Fraction:
        return self.signed_counts.get(k, Fraction(0))

    def as_list(self) -> list[Fraction]:
        return [self.get(k) for k in range(self.level + 1)]


def productions(k: int, p: Params) -> list[tuple[int, Fraction]]:
    """(child label, signed multiplicity) pairs produced by label k; zero multiplicities dropped."""
    out = []
    mult3 = 24 * p.b * comb(k, 3)
    if mult3:
        out.append((k - 3, mult3))
    mult1 = 2 * p.a * k
    if mult1:
        out.append((k - 1, mult1))
    out.append((k + 1, Fraction(1)))
    return out


def root_level() -> TreeLevelCounts:
    return TreeLevelCounts(0, {0: Fraction(1)})


def step_level(counts: TreeLevelCounts, p: Params) -> TreeLevelCounts:
    nxt: dict[int, Fraction] = {}
    for k, c in counts.signed_counts.items():
        if not c:
            continue
        for child, mult in productions(k, p):
            nxt[child] = nxt.get(child, Fraction(0)) + c * mult
    return TreeLevelCounts(counts.level + 1, {k: v for k, v in sorted(nxt.items()) if v})


def counts_to_level(n: int, p: Params) -> list[TreeLevelCounts]:
    levels = [root_level()]
    for _ in range(n):
        levels.append(step_level(levels[-1], p))
    return levels


def integer_sign_hypothesis(p: Params) -> bool:
    """Integer a > 0 and integer b < 0."""
    return p.is_integral and p.a > 0 and p.b < 0


@dataclass
class InterpretationReport:
    params: Params
    n_max: int
    ok: bool
    hypothesis_met: bool
    first_mismatch: Optional[tuple[int, int]] = None
    notes: list[str] = field(default_factory=list)


def verify_interpretation(n_max: int, p: Params) -> InterpretationReport:
    """Compare signed counts with the coefficients of P_n for every n <= n_max."""
    polys = build_recurrence(n_max, p)
    levels = counts_to_level(n_max, p)
    report = InterpretationReport(p, n_max, True, integer_sign_hypothesis(p))
    if not report.hypothesis_met:
        report.notes.append("parameters outside integer a > 0, b < 0; result is informational")
    for n in range(n_max + 1):
        for k in range(n + 1):
            if levels[n].get(k) != polys[n][k]:
                report.ok = False
                report.first_mismatch = (n, k)
                return report
    return report


class NodeBudgetExceeded(RuntimeError):
    pass


def enumerate_explicit(n: int, p: Params, budget: int = NODE_BUDGET) -> list[TreeLevelCounts]:
    """Level-by-level node multisets with marked and unmarked labels kept apart.

    Each node applies the rule literally (a negative production flips the
    marking); nothing cancels. Refuses once a level exceeds ``budget`` nodes.
    """
    if not p.is_integral:
        raise ValueError("explicit tree needs integer a and b")
    levels = []
    unmarked: dict[int, int] = {0: 1}
    marked: dict[int, int] = {}
    for level in range(n + 1):
        signed = {k: Fraction(unmarked.get(k, 0) - marked.get(k, 0)) for k in set(unmarked) | set(marked)}
        levels.append(
            TreeLevelCounts(level, {k: v for k, v in sorted(signed.items()) if v}, dict(sorted(unmarked.items())), dict(sorted(marked.items())))
        )
        if level == n:
            break
        new_u: dict[int, int] = {}
        new_m: dict[int, int] = {}
        for is_marked, pool in ((False, unmarked), (True, marked)):
            for k, count in pool.items():
                for child, mult in productions(k, p):
                    mult = int(mult)
                    flip = mult < 0
                    target = new_m if (is_marked != flip) else new_u
                    target[child] = target.get(child, 0) + count * abs(mult)
        total = sum(new_u.values()) + sum(new_m.values())
        if total > budget:
            raise NodeBudgetExceeded(f"level {level + 1} would hold {total} nodes (budget {budget})")
        unmarked, marked = new_u, new_m
    return levels
