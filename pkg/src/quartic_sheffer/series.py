"""Dense truncated power series over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def truncate(coeffs: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(c) for c in coeffs[:order]]
    out.extend(Fraction(0) for _ in range(order - len(out)))
    return out


def mul(f: Sequence[Fraction], g: Sequence[Fraction], order: int) -> list[Fraction]:
    """Cauchy product of ``f`` and ``g`` modulo z**order."""
    out = [Fraction(0)] * order
    for i, fi in enumerate(f[:order]):
        if not fi:
            continue
        for j, gj in enumerate(g[: order - i]):
            if gj:
                out[i + j] += fi * gj
    return out


def exp(h: Sequence[Fraction], order: int) -> list[Fraction]:
    """exp(h) modulo z**order, for a series with h(0) = 0.

    Uses the differential identity G' = h' G, i.e.
    n g_n = sum_{k=1}^{n} k h_k g_{n-k}.
    """
    h = truncate(h, order)
    if h and h[0] != 0:
        raise ValueError("exp series requires zero constant term")
    g = [Fraction(0)] * order
    if order == 0:
        return g
    g[0] = Fraction(1)
    nonzero = [(k, k * hk) for k, hk in enumerate(h) if k >= 1 and hk]
    for n in range(1, order):
        acc = Fraction(0)
        for k, khk in nonzero:
            if k > n:
                break
            acc += khk * g[n - k]
        g[n] = acc / n
    return g


def quartic_exponent(a: Fraction, b: Fraction, order: int) -> list[Fraction]:
    """Series of exp(a z^2 + b z^4) modulo z**order."""
    h = [Fraction(0)] * max(order, 5)
    h[2] = Fraction(a)
    h[4] = Fraction(b)
    return exp(h, order)
