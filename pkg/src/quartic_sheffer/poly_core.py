"""Exact construction of the polynomials P_n with

    sum_n P_n(x) z^n / n! = exp(x z + a z^2 + b z^4).

Two independent routes are provided: the closed form for the coefficients
(``build_explicit``) and the order-4 three-term recurrence
(``build_recurrence``). A third route through the exponential Riordan
matrix lives in :mod:`quartic_sheffer.riordan`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Sequence, Union

from . import series

RationalLike = Union[int, Fraction, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Parse an int, Fraction, or "p/q" / decimal string exactly."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational parameter")
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Params:
    """Exact parameters (a, b) of the generating function exp(xz + az^2 + bz^4)."""

    a: Fraction
    b: Fraction

    def __init__(self, a: RationalLike, b: RationalLike):
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))

    @property
    def locus_hypothesis(self) -> bool:
        """True when b < 0, the condition under which all zeros lie on the axes."""
        return self.b < 0

    @property
    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def negated(self) -> Params:
        return Params(-self.a, -self.b)

    def __str__(self) -> str:
        return f"(a={self.a}, b={self.b})"


@dataclass(frozen=True)
class ExactPoly:
    """Dense polynomial with exact rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence[RationalLike]):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def scale(self, c: RationalLike) -> ExactPoly:
        c = Fraction(c)
        return ExactPoly([c * x for x in self.coeffs])

    def __add__(self, other: ExactPoly) -> ExactPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: ExactPoly) -> ExactPoly:
        return self + other.scale(-1)

    def shift(self, k: int = 1) -> ExactPoly:
        """Multiply by x**k."""
        return ExactPoly([Fraction(0)] * k + list(self.coeffs))

    def reflect(self) -> ExactPoly:
        """The polynomial x -> P(-x)."""
        return ExactPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return " + ".join(terms) if terms else "0"


def c_coeff(n: int, p: Params) -> Fraction:
    """[z^{2n}] exp(a z^2 + b z^4) = sum_j a^(n-2j)/(n-2j)! * b^j/j!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    for j in range(n // 2 + 1):
        total += p.a ** (n - 2 * j) / factorial(n - 2 * j) * p.b**j / factorial(j)
    return total


def coefficient(n: int, k: int, p: Params) -> Fraction:
    """Coefficient of x^k in P_n, namely (n!/k!) c_{(n-k)/2} when n-k is even."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        raise ValueError(f"coefficient index k={k} exceeds degree n={n}")
    if (n - k) % 2:
        return Fraction(0)
    return Fraction(factorial(n), factorial(k)) * c_coeff((n - k) // 2, p)


def build_explicit(n: int, p: Params) -> ExactPoly:
    """P_n from the closed-form coefficients."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # c values are shared across k; compute each once.
    cs = [c_coeff(j, p) for j in range(n // 2 + 1)]
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n % 2, n + 1, 2):
        coeffs[k] = Fraction(factorial(n), factorial(k)) * cs[(n - k) // 2]
    return ExactPoly(coeffs)


def _seeds(p: Params) -> list[ExactPoly]:
    a = p.a
    return [
        ExactPoly([1]),
        ExactPoly([0, 1]),
        ExactPoly([2 * a, 0, 1]),
        ExactPoly([0, 6 * a, 0, 1]),
    ]


def build_recurrence(n_max: int, p: Params) -> list[ExactPoly]:
    """P_0..P_{n_max} via

    P_n = x P_{n-1} + 2a (n-1) P_{n-2} + 24 b C(n-1, 3) P_{n-4},  n >= 4.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    polys = _seeds(p)[: n_max + 1]
    for n in range(4, n_max + 1):
        nxt = polys[n - 1].shift(1)
        if p.a:
            nxt = nxt + polys[n - 2].scale(2 * p.a * (n - 1))
        if p.b:
            nxt = nxt + polys[n - 4].scale(24 * p.b * comb(n - 1, 3))
        polys.append(nxt)
    return polys


def derivative(poly: ExactPoly) -> ExactPoly:
    return ExactPoly([k * c for k, c in enumerate(poly.coeffs)][1:] or [0])


def evaluate(poly: ExactPoly, x):
    """Horner evaluation. Exact for int/Fraction input; otherwise the
    coefficients are coerced to the numeric type of ``x`` (complex, mpmath)."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        acc = Fraction(0)
        for c in reversed(poly.coeffs):
            acc = acc * x + c
        return acc
    coerce = _coercer(x)
    acc = coerce(0) * x
    for c in reversed(poly.coeffs):
        acc = acc * x + coerce(c)
    return acc


def _coercer(x):
    try:
        import mpmath
    except ImportError:  # pragma: no cover
        mpmath = None
    if mpmath is not None and isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return lambda c: mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator
    return lambda c: float(Fraction(c))


def gf_coefficient(n: int, p: Params, x: RationalLike) -> Fraction:
    """n! [z^n] exp(a z^2 + b z^4) * exp(x z), by exact truncated series product.

    Independent of the closed form and the recurrence; equals P_n(x).
    """
    x = Fraction(x)
    order = n + 1
    g = series.quartic_exponent(p.a, p.b, order)
    ex = [x**j / factorial(j) for j in range(order)]
    return series.mul(g, ex, order)[n] * factorial(n)
