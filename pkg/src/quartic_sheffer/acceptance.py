"""The acceptance battery, shared by ``quartic-sheffer verify`` and the test suite.

Every criterion returns a :class:`CriterionResult`; tolerances are fixed here.
``Scale`` shrinks the sweeps for quick runs without touching tolerances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath
import numpy as np

from . import gen_tree, riordan, saddle, zero_locus
from .poly_core import Params, build_explicit, build_recurrence, derivative

ROUTE_GRID = [(a, b) for a in (0, 1, 2, 5) for b in (-1, -3)] + [(1, 1), (2, 3)]
LOCUS_GRID = [(a, b) for a in (0, 1, 2, 5) for b in (-1, -3)]
TREE_GRID = [(a, b) for a in (1, 2, 3) for b in (-1, -2, -3)]

LOCUS_TOL = 1e-8
LOCUS_PRECISION = 256
SADDLE_RESIDUAL = 1e-12
CLOSED_FORM_TOL = 1e-9
SLOPE_TARGET, SLOPE_TOL = 0.5, 0.05
ORACLE_TOL = 1e-10
DOUBLING_TOL = 1e-12
ASYM_FINAL_TOL = 0.05
SADDLE_MS = (25, 100, 400, 1600)
ASYM_MS = (50, 100, 200, 400)
ORACLE_POINTS = (Fraction(3, 10), complex(1, 0.5), complex(0, 1.25), complex(-1.5, 0))


@dataclass
class Scale:
    route_n: int = 60
    riordan_n: int = 20
    tree_n: int = 20
    tree_explicit_n: int = 6
    locus_n: int = 50
    oracle_m: int = 40
    saddle_ms: tuple[int, ...] = SADDLE_MS
    saddle_points: int = 20
    asym_ms: tuple[int, ...] = ASYM_MS

    @classmethod
    def quick(cls, max_n: Optional[int] = None) -> Scale:
        n = max_n if max_n is not None else 10
        return cls(
            route_n=n,
            riordan_n=max(5, min(20, n)),
            tree_n=n,
            tree_explicit_n=min(6, n),
            locus_n=n,
            oracle_m=min(40, n),
            saddle_ms=(25, 100),
            saddle_points=5,
            asym_ms=(50, 100),
        )


@dataclass
class CriterionResult:
    number: int
    name: str
    status: str  # PASS, FAIL, or HYPOTHESIS_NOT_MET
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        return f"[{self.status}] criterion {self.number}: {self.name} ({self.seconds:.1f}s) {self.detail}"


def _timed(number: int, name: str, fn: Callable[[], tuple[str, str, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    status, detail, data = fn()
    return CriterionResult(number, name, status, detail, time.perf_counter() - t0, data)


def _ok(flag: bool) -> str:
    return "PASS" if flag else "FAIL"


def route_equivalence(scale: Scale = Scale()) -> CriterionResult:
    def run():
        n_max = scale.route_n
        for a, b in ROUTE_GRID:
            p = Params(a, b)
            rec = build_recurrence(n_max, p)
            A = riordan.build_riordan(n_max + 1, p)
            for n in range(n_max + 1):
                exp_poly = build_explicit(n, p)
                if exp_poly != rec[n]:
                    return "FAIL", f"explicit != recurrence at n={n}, {p}", {}
                row = [A[n, k] for k in range(n + 1)]
                if row != [exp_poly[k] for k in range(n + 1)]:
                    return "FAIL", f"riordan row != explicit at n={n}, {p}", {}
        return "PASS", f"{len(ROUTE_GRID)} parameter pairs, n <= {n_max}", {}

    return _timed(1, "route equivalence", run)


def derivative_identity(scale: Scale = Scale()) -> CriterionResult:
    def run():
        for a, b in ROUTE_GRID:
            polys = build_recurrence(scale.route_n, Params(a, b))
            for n in range(1, len(polys)):
                if derivative(polys[n]) != polys[n - 1].scale(n):
                    return "FAIL", f"P_{n}' != {n} P_{n-1} at (a,b)=({a},{b})", {}
        return "PASS", f"n <= {scale.route_n}", {}

    return _timed(2, "derivative identity", run)


def riordan_identities(scale: Scale = Scale()) -> CriterionResult:
    def run():
        N = scale.riordan_n
        for a, b in ROUTE_GRID:
            p = Params(a, b)
            for rep in (
                riordan.inverse_identity_check(N, p),
                riordan.production_identity_check(N, p),
                riordan.commutation_check(N, p),
            ):
                if not rep.equal:
                    return "FAIL", f"{rep.name} fails at {rep.first_mismatch} for {p}", {}
        return "PASS", f"N={N}: A A^-1 = I, A^-1 U A = B + U, A B = B A", {}

    return _timed(3, "Riordan identities", run)


def tree_interpretation(scale: Scale = Scale()) -> CriterionResult:
    def run():
        for a, b in TREE_GRID:
            rep = gen_tree.verify_interpretation(scale.tree_n, Params(a, b))
            if not rep.ok:
                return "FAIL", f"signed counts differ at {rep.first_mismatch} for (a,b)=({a},{b})", {}
        p = Params(1, -1)
        explicit = gen_tree.enumerate_explicit(scale.tree_explicit_n, p)
        signed = gen_tree.counts_to_level(scale.tree_explicit_n, p)
        for e, s in zip(explicit, signed):
            if e.signed_counts != s.signed_counts:
                return "FAIL", f"explicit tree disagrees at level {e.level}", {}
        if scale.tree_explicit_n >= 4:
            lvl = explicit[4]
            if (lvl.unmarked.get(0), lvl.marked.get(0)) != (12 * 1**2, 24 * 1):
                return "FAIL", f"level 4 multiplicities {lvl.unmarked}, {lvl.marked}", {}
        return "PASS", f"{len(TREE_GRID)} pairs, n <= {scale.tree_n}; explicit tree n <= {scale.tree_explicit_n}", {}

    return _timed(4, "generating-tree interpretation", run)


_locus_cache: dict = {}


def _certify(a, b, n_max, workers=1):
    key = (a, b, n_max)
    if key not in _locus_cache:
        _locus_cache[key] = zero_locus.certify_theorem(n_max, Params(a, b), LOCUS_PRECISION, LOCUS_TOL, workers)
    return _locus_cache[key]


def zero_locus_criterion(scale: Scale = Scale(), workers: int = 1, grid=None) -> CriterionResult:
    grid = LOCUS_GRID if grid is None else grid

    def run():
        total = 0
        for a, b in grid:
            rep = _certify(a, b, scale.locus_n, workers)
            if not rep.hypothesis_met:
                return "HYPOTHESIS_NOT_MET", f"b={b} >= 0; locus check informational ({len(rep.off_axis)} off-axis roots)", {}
            if rep.failures:
                return "FAIL", f"root finder failed for (a,b)=({a},{b}) at n={rep.failures[0].n}", {}
            if rep.off_axis:
                n, z, res = rep.off_axis[0]
                return "FAIL", f"off-axis root {z} of P_{n} at (a,b)=({a},{b})", {}
            for r in rep.results:
                rs = r.rootset
                total += len(rs.roots)
                if len(rs.roots) != r.n:
                    return "FAIL", f"root count {len(rs.roots)} != {r.n}", {}
                if any(res > bound for res, bound in zip(rs.residuals, rs.residual_bounds)):
                    return "FAIL", f"residual above bound for P_{r.n} at (a,b)=({a},{b})", {}
                if not zero_locus.symmetry_closed(rs, 10 * LOCUS_TOL):
                    return "FAIL", f"roots of P_{r.n} not closed under symmetries", {}
        return "PASS", f"{total} roots over {len(grid)} pairs, n <= {scale.locus_n}, all on the axes", {}

    return _timed(5, "zero locus", run)


def reduction_criterion(scale: Scale = Scale(), workers: int = 1) -> CriterionResult:
    def run():
        count = 0
        for a, b in LOCUS_GRID:
            rep = _certify(a, b, scale.locus_n, workers)
            for r in rep.results:
                if r.rootset is None:
                    return "FAIL", f"no roots for n={r.n}", {}
                count += len(r.rootset.w_roots)
                if not zero_locus.w_roots_real(r.rootset, LOCUS_TOL):
                    return "FAIL", f"complex root of reduced Q for P_{r.n} at (a,b)=({a},{b})", {}
        return "PASS", f"{count} reduced roots, all real", {}

    return _timed(6, "even-degree reduction", run)


def _endpoint_slope(m, a, axis):
    t_star, z_star = saddle.critical_endpoint(m, a, axis)
    ds = np.logspace(-6, -2, 9)
    errs = []
    for d in ds:
        s = (t_star - d) if axis == "real" else 1j * (t_star - d)
        errs.append(abs(saddle.solve_saddle(saddle.ScaledQuery(m, s, a)).zeta - z_star))
    return float(np.polyfit(np.log(ds), np.log(errs), 1)[0]), z_star, errs[0]


def saddle_criterion(scale: Scale = Scale()) -> CriterionResult:
    def run():
        worst_res = worst_cf = 0.0
        slopes = []
        for a in (0, 1):
            for m in scale.saddle_ms:
                for axis, end in (("real", saddle.j1_end(m, a)), ("imag", saddle.j2_end(m, a))):
                    for k in range(1, scale.saddle_points + 1):
                        t = end * k / (scale.saddle_points + 1)
                        s = t if axis == "real" else 1j * t
                        q = saddle.ScaledQuery(m, s, a)
                        roots = saddle._quartic_roots(q.s, q.eta)
                        n_q4 = sum(saddle.in_fourth_quadrant(z) for z in roots)
                        if n_q4 != 1:
                            return "FAIL", f"{n_q4} fourth-quadrant roots at m={m}, s={s}, a={a}", {}
                        sol = saddle.solve_saddle(q)
                        rel = sol.residual / (1 + abs(s))
                        cf = saddle.validate_closed_form(q, sol)
                        worst_res, worst_cf = max(worst_res, rel), max(worst_cf, cf)
                        if rel > SADDLE_RESIDUAL or cf > CLOSED_FORM_TOL:
                            return "FAIL", f"residual {rel:.2e} / closed form {cf:.2e} at m={m}, s={s}, a={a}", {}
                    slope, z_star, nearest = _endpoint_slope(m, a, axis)
                    slopes.append(slope)
                    if abs(slope - SLOPE_TARGET) > SLOPE_TOL:
                        return "FAIL", f"endpoint slope {slope:.3f} at m={m}, a={a}, {axis}", {}
                    if a == 0:
                        target = saddle.ZETA_END if axis == "real" else -1j * saddle.ZETA_END
                        if abs(z_star - target) > 1e-14 or nearest > 1e-2:
                            return "FAIL", f"endpoint limit {z_star} != {target}", {}
        return (
            "PASS",
            f"max residual {worst_res:.1e}, max closed-form gap {worst_cf:.1e}, slopes in [{min(slopes):.4f}, {max(slopes):.4f}]",
            {"slopes": slopes},
        )

    return _timed(7, "saddle correctness", run)


def _exact_P(m, x, p: Params, precision=256):
    poly = build_explicit(m, p)
    if isinstance(x, Fraction):
        re, im = x, Fraction(0)
    else:
        re, im = Fraction(x.real), Fraction(x.imag)
    return saddle.evaluate_adaptive(
        poly, lambda: mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator), precision
    )


def oracle_criterion(scale: Scale = Scale()) -> CriterionResult:
    def run():
        worst = worst_dbl = 0.0
        ms = sorted(set(range(0, scale.oracle_m + 1, 5)) | {1, 2, 3, scale.oracle_m})
        for a, b in LOCUS_GRID:
            a_eff, lam = saddle.normalize_b(a, b)
            for m in ms:
                for x in ORACLE_POINTS:
                    xc = complex(x)
                    val, prev, _, _ = saddle.contour_oracle_detail(m, xc / lam, a_eff)
                    with mpmath.workprec(256):
                        oracle = val * mpmath.mpf(lam) ** m
                        exact = _exact_P(m, x, Params(a, b))
                        rel = float(abs(oracle - exact) / abs(exact))
                        dbl = float(abs(val - prev) / abs(val))
                    worst, worst_dbl = max(worst, rel), max(worst_dbl, dbl)
                    if rel > ORACLE_TOL or dbl > DOUBLING_TOL:
                        return "FAIL", f"oracle rel err {rel:.2e}, doubling {dbl:.2e} at m={m}, x={x}, (a,b)=({a},{b})", {}
        return "PASS", f"max rel err {worst:.1e}, max doubling change {worst_dbl:.1e}, m in {ms}", {}

    return _timed(8, "oracle agreement", run)


def asymptotic_criterion(scale: Scale = Scale()) -> CriterionResult:
    def run():
        table = {}
        for s in (1.0, 0.5j):
            for a in (0, 1):
                errs = [saddle.main_term_error(m, s, a) for m in scale.asym_ms]
                table[f"s={s},a={a}"] = errs
                if any(e2 >= e1 for e1, e2 in zip(errs, errs[1:])):
                    return "FAIL", f"not decreasing at s={s}, a={a}: {errs}", {"errors": table}
                if scale.asym_ms[-1] >= 400 and errs[-1] >= ASYM_FINAL_TOL:
                    return "FAIL", f"final error {errs[-1]:.3f} at s={s}, a={a}", {"errors": table}
        final = max(v[-1] for v in table.values())
        return "PASS", f"decreasing in m over {scale.asym_ms}; worst final error {final:.4f}", {"errors": table}

    return _timed(9, "asymptotic trend", run)


def falsification_criterion(scale: Scale = Scale(), workers: int = 1) -> CriterionResult:
    def run():
        off = 0
        for a in (0, 1, 2, 5):
            rep = _certify(a, 1, scale.locus_n, workers)
            if rep.verdict not in ("hypothesis not met",):
                return "FAIL", f"b=+1 run reported '{rep.verdict}' for a={a}", {}
            off += len(rep.off_axis)
        if off == 0:
            return "FAIL", "no off-axis roots with b=+1; the locus check would be vacuous", {}
        return "PASS", f"b=+1 reported 'hypothesis not met' with {off} off-axis roots", {}

    return _timed(10, "falsification control", run)


def run_all(scale: Scale = Scale(), workers: int = 1, locus_params: Optional[tuple] = None) -> list[CriterionResult]:
    results = [
        route_equivalence(scale),
        derivative_identity(scale),
        riordan_identities(scale),
        tree_interpretation(scale),
        zero_locus_criterion(scale, workers, None if locus_params is None else [locus_params]),
        reduction_criterion(scale, workers),
        saddle_criterion(scale),
        oracle_criterion(scale),
        asymptotic_criterion(scale),
        falsification_criterion(scale, workers),
    ]
    return results
