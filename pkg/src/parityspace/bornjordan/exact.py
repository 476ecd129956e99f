"""Born-Jordan parity matrix elements as exact finite sums."""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from ..parity import FilterKind, ParityMatrix
from ..specfun import ASINH_ONE, BigRational
from .coefficients import xi_sum

ZERO = BigRational(0)


@dataclass(frozen=True)
class BJExactEntry:
    """[Pi_BJ]_{mn} = sqrt(n!/m!) (r_sqrt2 sqrt(2) + r_arcsinh arcsinh(1)), m >= n.

    Entries off the every-fourth diagonals carry zero coefficients.
    """

    m: int
    n: int
    r_sqrt2: BigRational
    r_arcsinh: BigRational

    def __post_init__(self):
        if self.m < self.n:
            raise ValueError("BJExactEntry is stored with m >= n")

    @property
    def is_zero(self) -> bool:
        return self.r_sqrt2 == 0 and self.r_arcsinh == 0

    def __float__(self) -> float:
        m, n = self.m, self.n
        if m == n:
            return float(self.r_sqrt2) * math.sqrt(2.0) + float(self.r_arcsinh) * ASINH_ONE
        if self.r_arcsinh:
            raise ValueError("off-diagonal arcsinh(1) coefficient")
        if self.r_sqrt2 == 0:
            return 0.0
        # square first so neither the rational nor the factorial ratio overflows
        sq = 2 * self.r_sqrt2 * self.r_sqrt2 * BigRational(factorial(n), factorial(m))
        root = math.sqrt(float(sq))
        return root if self.r_sqrt2 > 0 else -root

    value = property(__float__)


def bj_element_exact(m: int, n: int) -> BJExactEntry:
    """Exact element; the matrix is real symmetric so (m, n) and (n, m) coincide."""
    if m < 0 or n < 0:
        raise ValueError("indices must be non-negative")
    if m < n:
        m, n = n, m
    d = m - n
    if d % 4:
        return BJExactEntry(m, n, ZERO, ZERO)
    total = 0
    r_ash = 0
    nf = factorial(n)
    for k in range(n + 1):
        w = comb(m, n - k) * (nf // factorial(k))
        for ell in range(0, d + 1, 2):
            a, b = (d - ell) // 2, ell // 2
            if a + b + k == 0:
                r_ash = 1
                continue
            term = xi_sum(a, b, k) * w * comb(d, ell)
            total += -term if b % 2 else term
    return BJExactEntry(m, n, BigRational(total, nf * 2 ** (d // 2)), BigRational(r_ash))


def bj_diagonal(n: int) -> BJExactEntry:
    """Diagonal element from the single-sum closed form (independent of the double sum)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    acc = ZERO
    inner = ZERO
    for k in range(n):
        if k % 2 == 0:
            mm = k // 2
            inner += BigRational(comb(2 * mm, mm) * (-1) ** mm, 4 ** mm)
        acc += BigRational((-1) ** k, k + 1) * inner
    return BJExactEntry(n, n, -acc, BigRational(1))


def exact_entries(N: int, cache=None) -> dict[tuple[int, int], BJExactEntry]:
    """Every nonzero lower-triangle element with indices < N."""
    out = {}
    for n in range(N):
        for m in range(n, N, 4):
            e = cache.get(m, n) if cache is not None else bj_element_exact(m, n)
            out[(m, n)] = e
    if cache is not None:
        cache.flush()
    return out


def entries_to_matrix(entries, N: int) -> np.ndarray:
    mat = np.zeros((N, N))
    for (m, n), e in entries.items():
        if m < N:
            mat[m, n] = mat[n, m] = float(e)
    return mat


def bj_matrix_exact(N: int, cache=None) -> ParityMatrix:
    """Float matrix of the exact elements; cost grows roughly as N^5, use for N up to ~120."""
    if N < 1:
        raise ValueError("N must be positive")
    mat = entries_to_matrix(exact_entries(N, cache), N)
    return ParityMatrix(FilterKind.born_jordan(), mat, "exact")
