"""Exponential Riordan matrices [g, f] restricted to this family, truncated to N x N.

A = [exp(a z^2 + b z^4), z] is the coefficient matrix of the sequence P_n;
its production matrix A^{-1} U A is B + U, with U the upper shift and B the
banded strictly lower part p_{k,k-1} = 2ak, p_{k,k-3} = 24b C(k,3).

All identities on infinite matrices are checked on finite sections, restricted
to the principal block that truncation cannot reach.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from . import series
from .poly_core import Params

Matrix = list[list[Fraction]]


def zeros(n: int, m: Optional[int] = None) -> Matrix:
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def matmul(x: Matrix, y: Matrix) -> Matrix:
    n, inner, m = len(x), len(y), len(y[0]) if y else 0
    out = zeros(n, m)
    for i in range(n):
        row = out[i]
        for k, xik in enumerate(x[i][:inner]):
            if not xik:
                continue
            for j, ykj in enumerate(y[k]):
                if ykj:
                    row[j] += xik * ykj
    return out


def block(x: Matrix, size: int) -> Matrix:
    return [row[:size] for row in x[:size]]


@dataclass(frozen=True)
class RiordanMatrix:
    """N x N lower-triangular section of an exponential Riordan array."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError("Riordan matrix must be square")
            if any(row[j] for j in range(i + 1, n)):
                raise ValueError("Riordan matrix must be lower triangular")

    @classmethod
    def from_rows(cls, rows: Matrix) -> RiordanMatrix:
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        n, k = idx
        return self.entries[n][k]


@dataclass(frozen=True)
class ProductionMatrix:
    """Production matrix B + U of the family, N x N."""

    size: int
    params: Params
    entries: tuple[tuple[Fraction, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n, a, b = self.size, self.params.a, self.params.b
        rows = zeros(n)
        for k in range(n):
            if k + 1 < n:
                rows[k][k + 1] = Fraction(1)
            if k >= 1:
                rows[k][k - 1] = 2 * a * k
            if k >= 3:
                rows[k][k - 3] = 24 * b * comb(k, 3)
        object.__setattr__(self, "entries", tuple(tuple(r) for r in rows))

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]

    def strictly_lower(self) -> Matrix:
        """B: the production matrix with the shift part removed."""
        return [[v if j < i else Fraction(0) for j, v in enumerate(row)] for i, row in enumerate(self.entries)]


def build_riordan(N: int, p: Params) -> RiordanMatrix:
    """Entries (n!/k!) [z^n] g(z) z^k with g = exp(a z^2 + b z^4), from the exp series."""
    if N < 1:
        raise ValueError("N must be positive")
    g = series.quartic_exponent(p.a, p.b, N)
    rows = zeros(N)
    for n in range(N):
        for k in range(n + 1):
            rows[n][k] = Fraction(factorial(n), factorial(k)) * g[n - k]
    return RiordanMatrix.from_rows(rows)


def shift_matrix(N: int) -> Matrix:
    """U: ones on the superdiagonal."""
    out = zeros(N)
    for i in range(N - 1):
        out[i][i + 1] = Fraction(1)
    return out


def invert(M: RiordanMatrix) -> RiordanMatrix:
    """Exact inverse of a unit lower-triangular matrix by forward substitution."""
    n = M.size
    for i in range(n):
        if M[i, i] != 1:
            raise ValueError(f"diagonal entry ({i},{i}) = {M[i, i]} is not 1")
    inv = identity(n)
    for j in range(n):
        for i in range(j + 1, n):
            acc = Fraction(0)
            for k in range(j, i):
                mik = M[i, k]
                if mik:
                    acc += mik * inv[k][j]
            inv[i][j] = -acc
    return RiordanMatrix.from_rows(inv)


@dataclass
class IdentityReport:
    name: str
    size: int
    block: int
    equal: bool
    max_discrepancy: Fraction
    first_mismatch: Optional[tuple[int, int]] = None


def compare_blocks(name: str, x: Matrix, y: Matrix, size: int, blk: int) -> IdentityReport:
    worst = Fraction(0)
    first = None
    for i in range(blk):
        for j in range(blk):
            d = abs(x[i][j] - y[i][j])
            if d and first is None:
                first = (i, j)
            worst = max(worst, d)
    return IdentityReport(name, size, blk, first is None, worst, first)


def production_identity_check(N: int, p: Params) -> IdentityReport:
    """Compare A^{-1} U A with B + U on the leading (N-1) x (N-1) block.

    The truncated U A loses its last row, so only that block is exact.
    """
    if N < 5:
        raise ValueError("production identity check needs N >= 5")
    A = build_riordan(N, p)
    lhs = matmul(invert(A).rows(), matmul(shift_matrix(N), A.rows()))
    return compare_blocks("A^-1 U A = B + U", lhs, ProductionMatrix(N, p).rows(), N, N - 1)


def inverse_identity_check(N: int, p: Params) -> IdentityReport:
    A = build_riordan(N, p)
    prod = matmul(A.rows(), invert(A).rows())
    return compare_blocks("A A^-1 = I", prod, identity(N), N, N)


def commutation_check(N: int, p: Params) -> IdentityReport:
    """A B = B A, compared with the last three rows excluded (B has lower bandwidth 3)."""
    if N < 4:
        raise ValueError("commutation check needs N >= 4")
    A = build_riordan(N, p).rows()
    B = ProductionMatrix(N, p).strictly_lower()
    return compare_blocks("A B = B A", matmul(A, B), matmul(B, A), N, N - 3)
