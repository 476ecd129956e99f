"""Fast Born-Jordan matrix from an exact-rational four-term recursion.

The table M_{k,l} = 4^l r_sqrt2(k + 4l, k) is filled from eight seeds by a row
recursion (first four columns) and a column recursion (everything else). The
recursion is an unproven identity, so every run re-derives the low block from
the finite-sum formula and refuses to return on any disagreement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import factorial
from types import MappingProxyType

import numpy as np

from ..parity import FilterKind, ParityMatrix
from ..specfun import ASINH_ONE, BigRational
from .exact import bj_element_exact

DEFAULT_N_CHECK = 80

SEEDS = {
    (0, 0): BigRational(0), (0, 1): BigRational(4),
    (1, 0): BigRational(-1), (1, 1): BigRational(-8),
    (2, 0): BigRational(-1, 2), (2, 1): BigRational(6),
    (3, 0): BigRational(-2, 3), (3, 1): BigRational(-4),
}
_ROW_AB = ((27, 56), (39, 72), (55, 88), (75, 104))
_ROW_OFFSETS = ((1, 2, 3), (2, 3, 5), (3, 5, 6), (5, 6, 7))


class ConjectureViolation(RuntimeError):
    def __init__(self, k: int, ell: int, recursive, exact):
        self.k, self.ell = k, ell
        super().__init__(
            f"recursion disagrees with the finite sum at (k, l) = ({k}, {ell}): "
            f"M = {recursive}, expected {exact}"
        )


@dataclass(frozen=True)
class BJRecursionState:
    M: MappingProxyType
    N: int
    validated_up_to: int
    checked_entries: int = field(default=0)

    @property
    def frontier(self) -> tuple[int, int]:
        """Largest k and l present in the table."""
        ks = max(k for k, _ in self.M)
        ls = max(l for _, l in self.M)
        return ks, ls


def build_m_table(N: int) -> dict[tuple[int, int], BigRational]:
    """All M_{k,l} with k + 4l < N (plus the seeds)."""
    L = max(0, (N - 1) // 4)
    M = dict(SEEDS)
    for r in range(4):
        a, b = _ROW_AB[r]
        o1, o2, o3 = _ROW_OFFSETS[r]
        for l in range(0, L - 1):
            M[r, l + 2] = 4 * (
                (a + b * l + 32 * l * l) * M[r, l + 1]
                - 16 * l * (o1 + 4 * l) * (o2 + 4 * l) * (o3 + 4 * l) * M[r, l]
            )
    for l in range(L + 1):
        q = 4 * l
        for k in range(0, N - q - 4):
            den = (k + 3) * (k + 4)
            M[k + 4, l] = (
                BigRational(1, k + 4) * M[k + 3, l]
                + BigRational(q + 2 * k + 5, den) * M[k + 2, l]
                + BigRational(q + k + 2, den) * M[k + 1, l]
                + BigRational((q + k + 1) * (q + k + 2), den) * M[k, l]
            )
    return M


def m_entry_float(k: int, ell: int, v: BigRational) -> float:
    """Gamma_{k,l} M_{k,l} (plus arcsinh(1) on the diagonal), overflow-safe."""
    if ell == 0:
        return math.sqrt(2.0) * float(v) + ASINH_ONE
    if v == 0:
        return 0.0
    sq = 2 * v * v * BigRational(factorial(k), factorial(k + 4 * ell) * 16 ** ell)
    return math.sqrt(float(sq)) if v > 0 else -math.sqrt(float(sq))


def validate_table(M, n_check: int, exact_lookup=None) -> int:
    """Compare every table entry with both indices < n_check; returns the count checked."""
    lookup = exact_lookup or bj_element_exact
    checked = 0
    for (k, ell), v in sorted(M.items(), key=lambda kv: (kv[0][0] + 4 * kv[0][1], kv[0][0])):
        m = k + 4 * ell
        if m >= n_check:
            continue
        e = lookup(m, k)
        want = e.r_sqrt2 * 4 ** ell
        if v != want or e.r_arcsinh != (1 if ell == 0 else 0):
            raise ConjectureViolation(k, ell, v, want)
        checked += 1
    return checked


def bj_matrix_recursive(N: int, n_check: int = DEFAULT_N_CHECK, cache=None):
    """Return (ParityMatrix, BJRecursionState); raises ConjectureViolation on mismatch."""
    if N < 1:
        raise ValueError("N must be positive")
    M = build_m_table(N)
    lookup = cache.get if cache is not None else None
    checked = validate_table(M, min(N, n_check), lookup)
    if cache is not None:
        cache.flush()
    mat = np.zeros((N, N))
    for (k, ell), v in M.items():
        m = k + 4 * ell
        if m >= N:
            continue
        mat[m, k] = mat[k, m] = m_entry_float(k, ell, v)
    state = BJRecursionState(MappingProxyType(M), N, min(N, n_check), checked)
    return ParityMatrix(FilterKind.born_jordan(), mat, "recursive"), state


def m_table(N: int) -> dict[tuple[int, int], BigRational]:
    """Convenience view restricted to k + 4l < N."""
    return {kl: v for kl, v in build_m_table(N).items() if kl[0] + 4 * kl[1] < N}
