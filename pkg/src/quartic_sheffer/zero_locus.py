"""Zeros of P_n and their classification against the real and imaginary axes.

Each P_n is even or odd, so P_n(x) = x^e Q(x^2) with e = n mod 2. Roots are
found for Q (half the degree) by Aberth iteration in multiprecision, seeded
from double-precision companion eigenvalues, then polished by Newton steps
on the exact Q. The roots of P_n are the two square roots of each root of Q,
together with the origin roots split off exactly.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from .poly_core import ExactPoly, Params, build_recurrence

DEFAULT_PRECISION = 256
DEFAULT_TOL = 1e-10


class RootClass(str, enum.Enum):
    REAL = "REAL"
    IMAGINARY = "IMAGINARY"
    ORIGIN = "ORIGIN"
    OFF_AXIS = "OFF_AXIS"


class RootFindingError(RuntimeError):
    """Aberth iteration did not converge; carries the best iterate."""

    def __init__(self, message, best_iterate, residuals):
        super().__init__(message)
        self.best_iterate = best_iterate
        self.residuals = residuals


@dataclass
class ParityReduction:
    """P(x) = x^(parity + 2*origin_order) * Q(x^2) with Q(0) != 0."""

    parity: int
    origin_order: int
    q: ExactPoly

    def rebuild(self) -> ExactPoly:
        coeffs = [Fraction(0)] * (2 * self.q.degree + 1)
        for j, c in enumerate(self.q.coeffs):
            coeffs[2 * j] = c
        return ExactPoly(coeffs).shift(self.parity + 2 * self.origin_order)


def reduce_parity(poly: ExactPoly) -> ParityReduction:
    """Split P into x^e (x^2)^r Q(x^2), exactly. Raises if P is not even or odd."""
    n = poly.degree
    e = n % 2
    if any(poly[k] for k in range(1 - e, n + 1, 2)):
        raise ValueError("polynomial has mixed parity; cannot reduce to Q(x^2)")
    q = [poly[2 * j + e] for j in range((n - e) // 2 + 1)]
    r = 0
    while r < len(q) - 1 and q[r] == 0:
        r += 1
    red = ParityReduction(e, r, ExactPoly(q[r:]))
    if red.rebuild() != poly:  # exact guard before any floating step
        raise AssertionError("parity reduction does not reproduce the polynomial")
    return red


def classify(root, tol: float = DEFAULT_TOL) -> RootClass:
    z = complex(root)
    r = abs(z)
    if r <= tol:
        return RootClass.ORIGIN
    scale = tol * (1 + r)
    dev_real = abs(z.imag)
    dev_imag = abs(z.real)
    is_real = dev_real <= scale
    is_imag = dev_imag <= scale
    if is_real and is_imag:
        return RootClass.REAL if dev_real <= dev_imag else RootClass.IMAGINARY
    if is_real:
        return RootClass.REAL
    if is_imag:
        return RootClass.IMAGINARY
    return RootClass.OFF_AXIS


def _mp_coeffs(poly: ExactPoly) -> list:
    return [mpmath.mpf(c.numerator) / c.denominator for c in poly.coeffs]


def _horner2(cs, z):
    """Value and derivative of sum cs[k] z^k."""
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(cs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _log_abs(c: Fraction) -> float:
    return math.log(abs(c.numerator)) - math.log(c.denominator)


def _seed_roots(q: ExactPoly) -> list[complex]:
    """Companion-matrix eigenvalues of a rescaled copy of q, in double precision."""
    d = q.degree
    logs = [(_log_abs(c) if c else None) for c in q.coeffs]
    # rescale w = rho * u so the end coefficients balance
    log_rho = (logs[0] - logs[d]) / d
    scaled_logs = [(lg + k * log_rho) if lg is not None else None for k, lg in enumerate(logs)]
    top = max(v for v in scaled_logs if v is not None)
    coeffs = []
    for k in range(d, -1, -1):
        v = scaled_logs[k]
        c = q.coeffs[k]
        coeffs.append(0.0 if v is None or v - top < -700 else math.copysign(math.exp(v - top), c))
    rho = math.exp(log_rho)
    try:
        u = np.roots(coeffs)
    except np.linalg.LinAlgError:
        u = np.array([])
    seeds = [complex(x) * rho for x in u if np.isfinite(x)]
    if len(seeds) != d or len(set(seeds)) != d:
        seeds = [rho * complex(math.cos(t), math.sin(t)) for t in (2 * math.pi * (k + 0.25) / d for k in range(d))]
    # perturb exact real seeds off the axis so conjugate pairs can separate
    return [s + 1j * 1e-3 * abs(s) * (1 if k % 2 else -1) if abs(s.imag) < 1e-12 * abs(s) else s for k, s in enumerate(seeds)]


def aberth(poly: ExactPoly, precision: int = DEFAULT_PRECISION, max_iter: int = 500) -> list:
    """All roots of ``poly`` (nonzero leading coefficient) at ``precision`` bits."""
    d = poly.degree
    if d < 1:
        return []
    with mpmath.workprec(precision + 32):
        cs = _mp_coeffs(poly)
        lead = cs[-1]
        cs = [c / lead for c in cs]
        if d == 1:
            return [-cs[0]]
        zs = [mpmath.mpc(s) for s in _seed_roots(poly)]
        eps = mpmath.ldexp(1, -precision)
        for _ in range(max_iter):
            worst = mpmath.mpf(0)
            for i in range(d):
                p, dp = _horner2(cs, zs[i])
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpc(eps)
                s = mpmath.fsum(1 / (zs[i] - zs[j]) for j in range(d) if j != i)
                w = ratio / (1 - ratio * s)
                zs[i] -= w
                worst = max(worst, abs(w) / max(abs(zs[i]), eps))
            if worst <= eps:
                return zs
        residuals = [abs(_horner2(cs, z)[0]) for z in zs]
        raise RootFindingError(
            f"Aberth iteration did not converge in {max_iter} steps at {precision} bits",
            [complex(z) for z in zs],
            [float(r) for r in residuals],
        )


def polish(poly: ExactPoly, roots, precision: int, steps: int = 3) -> list:
    """Newton refinement on the exact polynomial with guard bits."""
    with mpmath.workprec(precision + 64):
        cs = _mp_coeffs(poly)
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            for _ in range(steps):
                p, dp = _horner2(cs, z)
                if p == 0 or dp == 0:
                    break
                z = z - p / dp
            out.append(z)
        return out


@dataclass
class RootSet:
    n: int
    roots: list
    classes: list[RootClass]
    residuals: list[float]
    residual_bounds: list[float]
    tol: float
    precision: int
    w_roots: list = field(default_factory=list)
    parity: int = 0
    origin_order: int = 0

    @property
    def off_axis(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c is RootClass.OFF_AXIS]

    def counts(self) -> dict[str, int]:
        out = {c.value: 0 for c in RootClass}
        for c in self.classes:
            out[c.value] += 1
        return out

    def rows(self) -> list[dict]:
        return [
            {
                "n": self.n,
                "re": float(mpmath.re(r)),
                "im": float(mpmath.im(r)),
                "class": c.value,
                "residual": res,
            }
            for r, c, res in zip(self.roots, self.classes, self.residuals)
        ]


def _abs_sum(cs, r) -> mpmath.mpf:
    acc = mpmath.mpf(0)
    for c in reversed(cs):
        acc = acc * r + abs(c)
    return acc


def find_roots(poly: ExactPoly, precision: int = DEFAULT_PRECISION, tol: float = DEFAULT_TOL) -> RootSet:
    """All n roots of an even or odd polynomial, classified.

    The residual bound for each root is 2^(16 - precision) (n+1)^2 sum |c_k| |x|^k,
    i.e. rounding-level relative to the size of the terms being summed.
    """
    n = poly.degree
    if n < 1:
        raise ValueError("find_roots needs degree >= 1")
    red = reduce_parity(poly)
    ws = polish(red.q, aberth(red.q, precision), precision) if red.q.degree >= 1 else []
    n_origin = red.parity + 2 * red.origin_order
    with mpmath.workprec(precision + 64):
        roots = [mpmath.mpc(0)] * n_origin
        for w in ws:
            r = mpmath.sqrt(w)
            roots.extend([r, -r])
        cs = _mp_coeffs(poly)
        residuals, bounds = [], []
        for r in roots:
            residuals.append(float(abs(_horner2(cs, r)[0])))
            bound = mpmath.ldexp(_abs_sum(cs, abs(r)), 16 - precision) * (n + 1) ** 2
            bounds.append(float(bound))
    classes = [classify(r, tol) for r in roots]
    if len(roots) != n:
        raise AssertionError(f"found {len(roots)} roots for degree {n}")
    return RootSet(n, roots, classes, residuals, bounds, tol, precision, ws, red.parity, red.origin_order)


def w_roots_real(rs: RootSet, tol: float) -> bool:
    """Whether every root of the reduced Q is real within ``tol`` (relative)."""
    return all(abs(complex(w).imag) <= tol * (1 + abs(complex(w))) for w in rs.w_roots)


def symmetry_closed(rs: RootSet, tol: float) -> bool:
    """Root multiset invariant under negation and conjugation, within tol (relative)."""
    zs = [complex(r) for r in rs.roots]
    for transform in (lambda z: -z, lambda z: z.conjugate()):
        pool = list(zs)
        for z in zs:
            t = transform(z)
            j = min(range(len(pool)), key=lambda i: abs(pool[i] - t))
            if abs(pool[j] - t) > tol * (1 + abs(t)):
                return False
            pool.pop(j)
    return True


@dataclass
class DegreeResult:
    n: int
    rootset: Optional[RootSet] = None
    error: Optional[str] = None
    best_iterate: Optional[list] = None


@dataclass
class CertificationReport:
    params: Params
    n_max: int
    tol: float
    precision: int
    results: list[DegreeResult]

    @property
    def hypothesis_met(self) -> bool:
        return self.params.locus_hypothesis

    @property
    def failures(self) -> list[DegreeResult]:
        return [r for r in self.results if r.error is not None]

    @property
    def off_axis(self) -> list[tuple[int, complex, float]]:
        out = []
        for r in self.results:
            if r.rootset is None:
                continue
            for i in r.rootset.off_axis:
                out.append((r.n, complex(r.rootset.roots[i]), r.rootset.residuals[i]))
        return out

    @property
    def certified(self) -> bool:
        """All roots on the axes, with no numerical failures."""
        return not self.failures and not self.off_axis

    @property
    def verdict(self) -> str:
        if self.failures:
            return "numerical failure"
        if not self.hypothesis_met:
            return "hypothesis not met"
        return "certified" if not self.off_axis else "locus violated"


def _solve_degree(args) -> DegreeResult:
    n, poly, precision, tol = args
    try:
        return DegreeResult(n, rootset=find_roots(poly, precision, tol))
    except RootFindingError as exc:
        return DegreeResult(n, error=str(exc), best_iterate=exc.best_iterate)


def certify_theorem(
    n_max: int,
    p: Params,
    precision: int = DEFAULT_PRECISION,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
    n_min: int = 1,
) -> CertificationReport:
    """Solve and classify every P_n, n_min <= n <= n_max.

    Runs for any parameters; the report's ``hypothesis_met`` records whether
    b < 0, outside of which off-axis roots are informational only.
    """
    polys = build_recurrence(n_max, p)
    jobs = [(n, polys[n], precision, tol) for n in range(max(1, n_min), n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_degree, jobs))
    else:
        results = [_solve_degree(j) for j in jobs]
    results.sort(key=lambda r: r.n)
    return CertificationReport(p, n_max, tol, precision, results)
