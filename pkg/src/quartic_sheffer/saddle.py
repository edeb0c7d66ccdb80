"""Saddle-point asymptotics of H_m(m^{3/4} s), where

    sum_m H_m(s) z^m / m! = exp(s z + a z^2 - z^4)

(the b = -1 normalization). The critical point zeta of
phi(z, s) + a z^2 / sqrt(m), phi(z, s) = s z - z^4 - Log z, is taken as the
unique root of -4 z^4 + eta z^2 + s z - 1 (eta = 2a / sqrt(m)) in the open
fourth quadrant.

Two exact references are provided: ``exact_Hm`` (exact coefficients,
evaluated in adaptive multiprecision) and ``contour_oracle`` (periodic
trapezoidal rule on a circle around the origin).
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from scipy.optimize import minimize_scalar

from .poly_core import ExactPoly, Params, build_explicit

#: 2^{5/2} / 3^{3/4}, the right end of J1 and J2 when a = 0.
S_END = 2**2.5 / 3**0.75
#: 12^{-1/4}, the limit of zeta at the right end of J1.
ZETA_END = 12**-0.25

QUADRANT_EPS = 1e-14
DEGENERATE_PHI2 = 1e-10
ENDPOINT_GAP = 0.05
ORIGIN_FACTOR = 10.0
OVERFLOW_LOG = 700.0


class SaddleError(RuntimeError):
    """No unique open-fourth-quadrant critical point; carries all four roots."""

    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = roots


class DegenerateSaddleError(RuntimeError):
    pass


class QuadratureError(RuntimeError):
    def __init__(self, message, estimates):
        super().__init__(message)
        self.estimates = estimates


def j1_end(m: int, a: float) -> float:
    return S_END - 2 * a / (12**0.25 * math.sqrt(m))


def j2_end(m: int, a: float) -> float:
    return S_END + 2 * a / (12**0.25 * math.sqrt(m))


def critical_endpoint(m: int, a: float, axis: str = "real") -> tuple[float, complex]:
    """Exact parameter value where two critical points merge on the axis.

    Returns (t*, z*) with s = t* (real axis) or s = i t* (imaginary axis).
    Agrees with the J1 / J2 right endpoints to first order in a / sqrt(m).
    """
    eta = 2 * a / math.sqrt(m)
    if axis == "real":
        z = math.sqrt((eta + math.sqrt(eta * eta + 48)) / 24)
        return 16 * z**3 - 2 * eta * z, complex(z)
    if axis == "imag":
        w = math.sqrt((-eta + math.sqrt(eta * eta + 48)) / 24)
        return 16 * w**3 + 2 * eta * w, complex(0, -w)
    raise ValueError("axis must be 'real' or 'imag'")


@dataclass(frozen=True)
class ScaledQuery:
    """Degree m, scaled argument s (on J1 or iJ2 for locus work), parameter a."""

    m: int
    s: complex
    a: float = 0.0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "a", float(self.a))

    @property
    def eta(self) -> float:
        return 2 * self.a / math.sqrt(self.m)

    @property
    def axis(self) -> Optional[str]:
        if self.s.imag == 0 and self.s.real > 0:
            return "real"
        if self.s.real == 0 and self.s.imag > 0:
            return "imag"
        return None

    @property
    def in_J(self) -> bool:
        if self.axis == "real":
            return self.s.real < j1_end(self.m, self.a)
        if self.axis == "imag":
            return self.s.imag < j2_end(self.m, self.a)
        return False

    def regime(self) -> dict[str, bool]:
        """Which of the global-regime conditions hold (reported, never enforced)."""
        t = abs(self.s)
        if self.axis == "real":
            gap = S_END - t
        elif self.axis == "imag":
            gap = S_END - t
        else:
            gap = float("nan")
        return {
            "in_J": self.in_J,
            "endpoint_separated": bool(gap >= ENDPOINT_GAP),
            "away_from_origin": t >= ORIGIN_FACTOR * math.log(self.m) / self.m if self.m > 1 else t > 0,
        }


@dataclass
class SaddleSolution:
    query: ScaledQuery
    zeta: complex
    residual: float
    all_roots: list[complex]
    quadrant_ok: bool


def _on_cut(z: complex) -> bool:
    return z == 0 or (z.imag == 0 and z.real < 0)


def phi(z: complex, s: complex) -> complex:
    """s z - z^4 - Log z with the principal logarithm."""
    z = complex(z)
    if _on_cut(z):
        raise ValueError(f"phi undefined at z={z}: zero or on the branch cut")
    return s * z - z**4 - cmath.log(z)


def phi_z(z: complex, s: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise ValueError("phi_z undefined at 0")
    return s - 4 * z**3 - 1 / z


def phi_zz(z: complex) -> complex:
    """Second z-derivative of phi; independent of s."""
    z = complex(z)
    return -12 * z * z + 1 / (z * z)


def saddle_residual(z: complex, q: ScaledQuery) -> float:
    return abs(phi_z(z, q.s) + q.eta * z)


def _quartic_roots(s: complex, eta: float) -> list[complex]:
    roots = [complex(r) for r in np.roots([-4.0, 0.0, eta, s, -1.0])]
    out = []
    for z in roots:
        for _ in range(4):
            f = -4 * z**4 + eta * z * z + s * z - 1
            df = -16 * z**3 + 2 * eta * z + s
            if df == 0:
                break
            step = f / df
            z -= step
            if abs(step) <= 1e-17 * abs(z):
                break
        out.append(z)
    return out


def in_fourth_quadrant(z: complex) -> bool:
    scale = QUADRANT_EPS * max(abs(z), 1.0)
    return z.real > scale and z.imag < -scale


def solve_saddle(q: ScaledQuery) -> SaddleSolution:
    roots = _quartic_roots(q.s, q.eta)
    q4 = [z for z in roots if in_fourth_quadrant(z)]
    if len(q4) != 1:
        raise SaddleError(
            f"expected one open-fourth-quadrant critical point for s={q.s}, m={q.m}, a={q.a}; found {len(q4)}",
            roots,
        )
    zeta = q4[0]
    return SaddleSolution(q, zeta, saddle_residual(zeta, q), roots, q.in_J)


def closed_form_candidates(q: ScaledQuery) -> list[complex]:
    """The radical expression for zeta over every choice of root branches."""
    eta, s = q.eta, q.s
    c2 = 2 ** (1 / 3)
    c4 = 2 ** (2 / 3)
    disc = (2 * eta**3 - 288 * eta - 108 * s * s) ** 2 - 4 * (eta * eta + 48) ** 3
    out = []
    for sd, k, s1, s2 in itertools.product((1, -1), range(3), (1, -1), (1, -1)):
        cube_arg = -2 * eta**3 + 288 * eta - sd * cmath.sqrt(disc) + 108 * s * s
        A = cmath.exp(cmath.log(cube_arg) / 3 + 2j * math.pi * k / 3) if cube_arg != 0 else 0j
        if A == 0:
            continue
        inner = eta / 6 + A / (12 * c2) + (eta * eta + 48) / (6 * c4 * A)
        r1 = s1 * cmath.sqrt(inner)
        if r1 == 0:
            continue
        r2 = s2 * cmath.sqrt(eta / 3 - A / (12 * c2) + s / (2 * r1) - (eta * eta + 48) / (6 * c4 * A))
        out.append(r1 / 2 - r2 / 2)
    return out


def validate_closed_form(q: ScaledQuery, sol: SaddleSolution) -> float:
    """Smallest distance from sol.zeta to any branch of the closed form."""
    return min(abs(z - sol.zeta) for z in closed_form_candidates(q))


@dataclass
class MainTerm:
    """Leading asymptotic term g(zeta(s)) of h_m(s), kept in log space."""

    query: ScaledQuery
    zeta: complex
    phi2: complex
    log_value: complex
    regime: dict[str, bool] = field(default_factory=dict)

    @property
    def log_magnitude(self) -> float:
        return self.log_value.real

    @property
    def phase(self) -> float:
        return math.remainder(self.log_value.imag, 2 * math.pi)

    @property
    def value(self) -> Optional[complex]:
        """Complex value, or None when it would overflow a double."""
        if self.log_magnitude > OVERFLOW_LOG:
            return None
        return cmath.exp(self.log_value)

    def mp_value(self) -> mpmath.mpc:
        return mpmath.exp(mpmath.mpc(self.log_value.real, self.log_value.imag))


def main_term(q: ScaledQuery) -> MainTerm:
    """g = exp(m s z + a sqrt(m) z^2 - m z^4) / z^(m+1)
           * sqrt(2 pi) i exp(-i Arg phi2 / 2) / (sqrt(m) sqrt|phi2|),  z = zeta,

    with phi2 = -12 z^2 + 1/z^2.
    """
    sol = solve_saddle(q)
    z, m, a, s = sol.zeta, q.m, q.a, q.s
    p2 = phi_zz(z)
    if abs(p2) < DEGENERATE_PHI2:
        raise DegenerateSaddleError(f"phi_zz(zeta) = {p2} vanishes; s={s} is at the saddle coalescence")
    log_g = (
        m * s * z
        + a * math.sqrt(m) * z * z
        - m * z**4
        - (m + 1) * cmath.log(z)
        + 0.5 * math.log(2 * math.pi)
        + 1j * math.pi / 2
        - 1j * cmath.phase(p2) / 2
        - 0.5 * math.log(m)
        - 0.5 * math.log(abs(p2))
    )
    return MainTerm(q, z, p2, log_g, q.regime())


# exact references -------------------------------------------------------


@functools.lru_cache(maxsize=64)
def _hm_poly(m: int, a: Fraction) -> ExactPoly:
    return build_explicit(m, Params(a, -1))


def _mp_exact(x) -> mpmath.mpf:
    f = Fraction(x)
    return mpmath.mpf(f.numerator) / f.denominator


def evaluate_adaptive(poly: ExactPoly, point, precision: int = 256, max_bits: int = 1 << 16) -> mpmath.mpc:
    """Evaluate ``poly`` at ``point()`` with enough guard bits that the result
    carries ``precision`` correct bits despite cancellation.

    ``point`` is a callable so the argument can be recomputed at each
    working precision.
    """
    wp = precision + 32
    while True:
        with mpmath.workprec(wp):
            x = point()
            cs = [_mp_exact(c) for c in poly.coeffs]
            val = mpmath.mpc(0)
            mag = mpmath.mpf(0)
            ax = abs(x)
            for c in reversed(cs):
                val = val * x + c
                mag = mag * ax + abs(c)
            if mag == 0:
                return +val
            lost = 0 if val == 0 else int(mpmath.ceil(mpmath.log(mag / abs(val), 2)))
            if val != 0 and lost + precision + 16 <= wp:
                return +val
        if wp >= max_bits:
            raise ArithmeticError(f"cancellation exceeds {max_bits} bits")
        wp = min(max_bits, max(2 * wp, precision + (lost if val != 0 else wp) + 64))


def exact_Hm(m: int, s: complex, a, precision: int = 256, scaled: bool = True) -> mpmath.mpc:
    """H_m(m^{3/4} s) (or H_m(s) with scaled=False) from exact coefficients.

    ``s`` and ``a`` are read exactly from their binary (or rational) values.
    """
    a_exact = Fraction(a)
    s = complex(s)
    re, im = Fraction(s.real), Fraction(s.imag)
    poly = _hm_poly(m, a_exact)

    def point():
        z = mpmath.mpc(_mp_exact(re), _mp_exact(im))
        return z * mpmath.mpf(m) ** mpmath.mpf(0.75) if scaled else z

    return evaluate_adaptive(poly, point, precision)


def default_radius(m: int, s: complex, a: float, n_theta: int = 256) -> float:
    """Radius minimizing the largest integrand magnitude on |z| = r:

        r -> max_theta Re(s z + a z^2 - z^4) - m ln r.
    """
    theta = np.linspace(0, 2 * np.pi, n_theta, endpoint=False)
    e = np.exp(1j * theta)

    def cost(log_r):
        z = math.exp(log_r) * e
        return float(np.max((s * z + a * z * z - z**4).real)) - m * log_r

    hi = math.log(2 * (m + 1) ** 0.25 + abs(s) ** (1 / 3) + abs(a) ** 0.5 + 1)
    res = minimize_scalar(cost, bounds=(math.log(1e-2), hi), method="bounded")
    return math.exp(res.x)


def _node_sum(m, s, a, r, nodes, start, step):
    """Sum of exp(s z + a z^2 - z^4) / z^m over z_j = r e^{2 pi i j / nodes}, j = start, start+step, ..."""
    sm, am, rm = mpmath.mpc(s), mpmath.mpf(a), mpmath.mpf(r)
    total = mpmath.mpc(0)
    biggest = mpmath.mpf(0)
    for j in range(start, nodes, step):
        z = rm * mpmath.expjpi(mpmath.mpf(2 * j) / nodes)
        term = mpmath.exp(sm * z + am * z * z - z**4) / z**m
        biggest = max(biggest, abs(term))
        total += term
    return total, biggest


def contour_oracle_detail(
    m: int,
    s: complex,
    a: float,
    radius: Optional[float] = None,
    nodes: int = 512,
    precision: int = 256,
    rel_tol: float = 1e-12,
    max_nodes: int = 1 << 14,
) -> tuple[mpmath.mpc, mpmath.mpc, int, float]:
    """(value, estimate at half the nodes, nodes used, radius).

    Doubles the node count until successive estimates agree to ``rel_tol``;
    each doubling evaluates only the new midpoints. The working precision is
    raised until the cancellation in the first sum is covered.
    """
    if nodes < 64:
        raise ValueError("contour oracle needs at least 64 nodes")
    if m < 0:
        raise ValueError("m must be nonnegative")
    s = complex(s)
    r = default_radius(m, s, a) if radius is None else float(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    wp = precision + 32
    while True:
        with mpmath.workprec(wp):
            total, biggest = _node_sum(m, s, a, r, nodes, 0, 1)
            fact = mpmath.factorial(m)
            prev = total * fact / nodes
            scale = biggest * fact
            lost = wp if prev == 0 else max(0, int(mpmath.ceil(mpmath.log(scale / abs(prev), 2))))
        if lost + precision + 16 <= wp or wp > precision + 4096:
            break
        wp = precision + lost + 64
    n = nodes
    older, cur = None, prev
    with mpmath.workprec(wp):
        # an exact zero of H_m can only be resolved to the rounding level of the terms
        floor = scale * mpmath.ldexp(1, 16 - precision)
        while n < max_nodes:
            odd, _ = _node_sum(m, s, a, r, 2 * n, 1, 2)
            total += odd
            n *= 2
            cur = total * fact / n
            if abs(cur - prev) <= max(rel_tol * abs(cur), floor):
                return +cur, +prev, n, r
            older, prev = prev, cur
    raise QuadratureError(f"trapezoid rule not converged at {n} nodes (radius {r})", [older, cur])


def contour_oracle(m, s, a, radius=None, nodes=512, precision=256) -> mpmath.mpc:
    """(m!/2 pi i) times the contour integral of exp(s z + a z^2 - z^4)/z^(m+1), i.e. H_m(s)."""
    return contour_oracle_detail(m, s, a, radius, nodes, precision)[0]


# comparison of the main term with exact values ---------------------------


def h_projection(m: int, s: complex, a: float, precision: int = 256) -> tuple[str, mpmath.mpf]:
    """The part of h_m(s) fixed by H_m: ("imag", Im h) or ("real", Re h).

    Im h = pi m^{m/4} H_m(m^{3/4}s) / m! on J1 and, for even m, on iJ2;
    for odd m on iJ2, Re h = i pi m^{m/4} H_m(m^{3/4}s) / m!.
    """
    q = ScaledQuery(m, s, a)
    if q.axis is None:
        raise ValueError("h projection is defined for s on the positive real or imaginary axis")
    H = exact_Hm(m, s, a, precision)
    with mpmath.workprec(precision):
        k = mpmath.pi * mpmath.mpf(m) ** (mpmath.mpf(m) / 4) / mpmath.factorial(m)
        if q.axis == "imag" and m % 2:
            return "real", mpmath.re(1j * k * H)
        return "imag", mpmath.re(k * H)


def pointwise_error(m: int, s: complex, a: float, precision: int = 256) -> float:
    """|proj(h_m(s)) - proj(g(zeta(s)))| / |g(zeta(s))| at one point."""
    kind, exact = h_projection(m, s, a, precision)
    mt = main_term(ScaledQuery(m, s, a))
    with mpmath.workprec(precision):
        g = mt.mp_value()
        approx = mpmath.im(g) if kind == "imag" else mpmath.re(g)
        return float(abs(exact - approx) / abs(g))


def main_term_error(m: int, s: complex, a: float, samples: int = 16, precision: int = 256) -> float:
    """Relative error of the main term, maximized over one local period of its phase.

    Only one component of h_m is known exactly, so the pointwise error swings
    with the phase of g. Taking the worst case over s' in a window of one
    period 2 pi / (m |Im(d zeta)|) (d the axis direction) recovers the
    modulus |h_m - g| / |g| up to the slow variation across the window.
    """
    q = ScaledQuery(m, s, a)
    if q.axis is None:
        raise ValueError("s must lie on the positive real or imaginary axis")
    d = 1 if q.axis == "real" else 1j
    zeta = solve_saddle(q).zeta
    period = 2 * math.pi / (m * abs((d * zeta).imag))
    offsets = [period * (j / samples - 0.5) for j in range(samples)]
    return max(pointwise_error(m, q.s + d * t, a, precision) for t in offsets)


def normalize_b(a, b) -> tuple[float, float]:
    """Map exp(xz + a z^2 + b z^4), b < 0, onto the b = -1 family.

    Returns (a', lam) with lam = |b|^{1/4}, a' = a / sqrt|b|, so that
    P_n(x; a, b) = lam^n H_n(x / lam; a').
    """
    b = float(b)
    if b >= 0:
        raise ValueError("rescaling to b = -1 requires b < 0")
    return float(a) / math.sqrt(-b), (-b) ** 0.25
