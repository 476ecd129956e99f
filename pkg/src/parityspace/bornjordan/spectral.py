"""Spectral diagnostics of the truncated Born-Jordan parity matrix and the Fock
coefficients of its top generalized eigenvector."""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial, lgamma

import numpy as np

from ..specfun import BigRational
from .recursion import bj_matrix_recursive

SUP_NORM = math.pi / 2


@dataclass(frozen=True)
class SpectralReport:
    N: int
    eigenvalues: np.ndarray
    top_norm: float
    rank9_energy_fraction: float
    trace: float

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "trace": self.trace,
            "top_norm": self.top_norm,
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
            "rank9_energy_fraction": self.rank9_energy_fraction,
        }


def spectral_report_of(mat: np.ndarray) -> SpectralReport:
    mat = np.asarray(mat)
    if mat.shape[0] < 9:
        raise ValueError("rank-9 diagnostics need N >= 9")
    ev = np.linalg.eigvalsh(mat.real)
    sq = np.sort(ev * ev)[::-1]
    return SpectralReport(
        N=mat.shape[0],
        eigenvalues=ev,
        top_norm=float(np.abs(ev).max()),
        rank9_energy_fraction=float(sq[:9].sum() / sq.sum()),
        trace=float(np.trace(mat.real)),
    )


def bj_spectral_report(N: int, matrix=None, cache=None) -> SpectralReport:
    if matrix is None:
        matrix = bj_matrix_recursive(N, cache=cache)[0].entries
    return spectral_report_of(matrix)


def _gamma_ratio(j: int) -> BigRational:
    """Gamma(3/4) / Gamma(3/4 + j) for any integer j, exactly."""
    r = BigRational(1)
    if j >= 0:
        for i in range(j):
            r /= BigRational(3, 4) + i
    else:
        for i in range(j, 0):
            r *= BigRational(3, 4) + i
    return r


def _log_abs(q: BigRational) -> float:
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def psi_plus_zero_fock(N: int) -> np.ndarray:
    """<n|psi_+^0>; only n = 0 mod 4 is nonzero. Not square-summable, so any
    truncation is only a probe of the pi/2 generalized eigenvalue."""
    if N < 1:
        raise ValueError("N must be positive")
    v = np.zeros(N)
    base = 0.5 * math.log(math.pi) - math.log(2.0) - lgamma(0.75)
    for n in range(0, N, 4):
        s = sum(
            BigRational(1, 8 ** k) * _gamma_ratio(k - n // 2) / (factorial(k) * factorial(n - 2 * k))
            for k in range(n // 2 + 1)
        )
        if s == 0:
            continue
        lg = _log_abs(s) + 0.5 * lgamma(n + 1) + (n + 0.25) * math.log(2.0) + base
        v[n] = math.exp(lg) if s > 0 else -math.exp(lg)
    return v


def eigen_residual(matrix: np.ndarray, vec: np.ndarray, rows: int | None = None) -> float:
    """max |(Pi v - (pi/2) v)_n| over the first ``rows`` components (default N/2)."""
    rows = rows if rows is not None else len(vec) // 2
    r = np.asarray(matrix).real @ vec - SUP_NORM * vec
    return float(np.abs(r[:rows]).max())
