"""Fock-basis displacement and squeezing matrices and the characteristic function."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .fock import as_density
from .specfun import log_factorial, log_sech


@dataclass(frozen=True)
class DisplacementMatrix:
    alpha: complex
    entries: np.ndarray

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    @property
    def guard(self) -> int:
        """Rows near the cut whose displaced image leaks past N.

        D|n> spreads over roughly |alpha| sqrt(2n + 1) levels, so the band
        grows with N as well as with |alpha|^2.
        """
        r = abs(self.alpha)
        return int(math.ceil(4 * r * r + 8 + 2 * r * math.sqrt(self.N)))

    def unitarity_defect(self) -> float:
        """max |D D^dagger - I| on the block untouched by truncation (nan if empty)."""
        k = self.N - self.guard
        if k <= 0:
            return float("nan")
        d = self.entries
        prod = d[:k, :] @ d[:k, :].conj().T
        return float(np.abs(prod - np.eye(k)).max())


@dataclass(frozen=True)
class SqueezeMatrix:
    xi: float
    entries: np.ndarray
    work_dim: int
    guarded_rows: int
    unitarity_defect: float
    truncation_error: float

    @property
    def N(self) -> int:
        return self.entries.shape[0]


def displacement_matrix(alpha: complex, N: int) -> DisplacementMatrix:
    if N < 1:
        raise ValueError("N must be positive")
    alpha = complex(alpha)
    d = kernels.displacement_blocks(np.array([alpha]), N, N)[0]
    d.setflags(write=False)
    return DisplacementMatrix(alpha, d)


def displacement_columns(alphas, nrows: int, ncols: int) -> np.ndarray:
    """Batched D(alpha)[:nrows, :ncols]; shape (len(alphas), nrows, ncols)."""
    return kernels.displacement_blocks(np.asarray(alphas, dtype=complex).ravel(), nrows, ncols)


def squeeze_guard(xi: float, N: int) -> int:
    """Extra Fock levels carried through the exponential.

    ``N (e^{2|xi|} - 1)`` capped at 4N covers the high rows at large N; the
    N-independent floor ``40 e^{|xi|}`` is what the low block needs when N is small.
    """
    g = min(max(20, int(math.ceil(N * (math.exp(2 * abs(xi)) - 1.0)))), 4 * N)
    return max(g, int(math.ceil(40.0 * math.exp(abs(xi)))))


def squeeze_elements(xi: float, N: int) -> np.ndarray:
    """Untruncated <m|S(xi)|n> for m, n < N from the normal-ordered factorisation.

    S(xi) = exp(-t a^2dag/2) sech(xi)^(a^dag a + 1/2) exp(t a^2/2) with t = tanh(xi),
    so every entry is a finite alternating sum of bounded terms; this stays
    accurate for |xi| far beyond what a truncated matrix exponential can reach.
    """
    t = math.tanh(xi)
    lsech = float(log_sech(xi))
    lf = log_factorial(np.arange(N))
    out = np.zeros((N, N))
    lt = math.log(abs(t) / 2.0) if t != 0 else -math.inf
    st = -1.0 if t < 0 else 1.0
    for m in range(N):
        for n in range(m % 2, N, 2):
            acc = 0.0
            for k in range(m % 2, min(m, n) + 1, 2):
                j = (m - k) // 2
                i = (n - k) // 2
                if i + j and t == 0:
                    continue
                lg = 0.5 * (lf[m] + lf[n]) - lf[j] - lf[i] - lf[k] + (k + 0.5) * lsech
                if i + j:
                    lg += (i + j) * lt
                sgn = (-1.0) ** j * st ** (i + j)
                acc += sgn * math.exp(lg)
            out[m, n] = acc
    return out


def squeeze_matrix(xi: float, N: int, tol: float = 1e-6) -> SqueezeMatrix:
    """S(xi) = exp[(xi/2)(a^2 - a^dag^2)] by Pade scaling-and-squaring on a guarded space.

    The exponential is taken on dimension N + guard and trimmed to N. The
    reported truncation error compares the low-index block against
    ``squeeze_elements``; exceeding ``tol`` raises ``ValueError``.
    """
    xi = float(xi)
    if abs(xi) > 3:
        raise ValueError(f"|xi| = {abs(xi)} > 3: truncation error dominates")
    if N < 1:
        raise ValueError("N must be positive")
    work = N + squeeze_guard(xi, N)
    a = np.diag(np.sqrt(np.arange(1, work, dtype=float)), 1)
    gen = 0.5 * xi * (a @ a - a.T @ a.T)
    big = scipy.linalg.expm(gen)
    s = np.ascontiguousarray(big[:N, :N])

    kcheck = min(N, 16)
    ref = squeeze_elements(xi, kcheck)
    trunc_err = float(np.abs(s[:kcheck, :kcheck] - ref).max())
    if trunc_err > tol:
        raise ValueError(f"squeeze truncation error {trunc_err:.2e} exceeds {tol:.0e}")

    # rows whose weight beyond column N is negligible; the rest are cut by truncation
    leak = np.sum(big[:N, N:] ** 2, axis=1)
    bad = np.nonzero(leak > 1e-9)[0]
    kblk = int(bad[0]) if bad.size else N
    if kblk:
        prod = s[:kblk, :] @ s[:kblk, :].T
        defect = float(np.abs(prod - np.eye(kblk)).max())
    else:
        defect = float("nan")
    s.setflags(write=False)
    return SqueezeMatrix(xi, s, work, kblk, defect, trunc_err)


def characteristic_function(rho, alpha: complex) -> complex:
    """Tr[rho D(alpha)]."""
    r = as_density(rho).entries
    d = displacement_matrix(alpha, r.shape[0]).entries
    return complex(np.sum(r * d.T))
