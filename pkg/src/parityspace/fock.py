"""Truncated Fock-space states, density matrices and quadrature operators.

Conventions: hbar = 1 and lambda = 1, so alpha = (x + i p)/sqrt(2) and the
phase-space measure is dx dp.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .specfun import log_factorial

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class FockState:
    coeffs: np.ndarray
    renormalization: float = 1.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("empty state")
        norm = np.linalg.norm(c)
        if abs(norm * norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalised: |psi|^2 = {norm * norm!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return self.coeffs.size

    @classmethod
    def from_amplitudes(cls, amps) -> "FockState":
        a = np.asarray(amps, dtype=complex).ravel()
        norm = np.linalg.norm(a)
        if norm == 0:
            raise ValueError("zero vector cannot be normalised")
        return cls(a / norm, renormalization=float(norm))


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        r = np.array(self.entries, dtype=complex)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise ValueError("density matrix must be square")
        if np.abs(r - r.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(r).real
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        if np.linalg.eigvalsh(r).min() < -PSD_TOL:
            raise ValueError("density matrix is not positive semidefinite")
        r.setflags(write=False)
        object.__setattr__(self, "entries", r)

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def support(self) -> int:
        """Smallest dimension holding every non-negligible entry."""
        mask = np.abs(self.entries) > 1e-15
        idx = np.nonzero(mask.any(axis=0) | mask.any(axis=1))[0]
        return int(idx.max()) + 1 if idx.size else 1

    def padded(self, dim: int) -> "DensityMatrix":
        """Embed in a larger space (exact) or drop empty trailing levels."""
        if dim < self.support():
            raise ValueError(f"cannot truncate state with support {self.support()} to {dim}")
        out = np.zeros((dim, dim), dtype=complex)
        k = min(dim, self.N)
        out[:k, :k] = self.entries[:k, :k]
        return DensityMatrix(out)

    def ensemble(self, cutoff: float = 1e-14):
        """Eigen-decomposition rho = sum_i w_i |v_i><v_i|, tiny weights dropped."""
        w, v = np.linalg.eigh(self.entries)
        keep = np.abs(w) > cutoff
        return w[keep], v[:, keep]

    @staticmethod
    def mixture(weights, rhos) -> "DensityMatrix":
        dim = max(r.N for r in rhos)
        total = sum(w * r.padded(dim).entries for w, r in zip(weights, rhos))
        return DensityMatrix(total)


@dataclass(frozen=True)
class LadderOps:
    a: np.ndarray
    x_op: np.ndarray
    p_op: np.ndarray

    @classmethod
    def build(cls, N: int) -> "LadderOps":
        a = np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1).astype(complex)
        ad = a.conj().T
        x_op = (a + ad) / math.sqrt(2.0)
        p_op = 1j * (ad - a) / math.sqrt(2.0)
        for arr in (a, x_op, p_op):
            arr.setflags(write=False)
        return cls(a, x_op, p_op)

    @property
    def N(self) -> int:
        return self.a.shape[0]


def number_state(n: int, N: int) -> FockState:
    if not 0 <= n < N:
        raise IndexError(f"Fock index {n} outside truncation 0..{N - 1}")
    c = np.zeros(N, dtype=complex)
    c[n] = 1.0
    return FockState(c)


def coherent_guard(abs_alpha_sq: float) -> int:
    """Truncation needed to hold a coherent state of mean photon number |alpha|^2."""
    return int(math.ceil(abs_alpha_sq + 10.0 * math.sqrt(abs_alpha_sq + 1.0)))


def coherent_state(alpha: complex, N: int, tol: float = 1e-10) -> FockState:
    """Glauber coherent state truncated to N levels and renormalised.

    The discarded weight is reported through ``renormalization`` (the norm of the
    truncated vector before rescaling); ``ValueError`` if it exceeds ``tol``.
    """
    alpha = complex(alpha)
    n = np.arange(N)
    r2 = abs(alpha) ** 2
    if alpha == 0:
        c = np.zeros(N, dtype=complex)
        c[0] = 1.0
        return FockState(c)
    logmag = -0.5 * r2 + n * math.log(abs(alpha)) - 0.5 * log_factorial(n)
    c = np.exp(logmag) * np.exp(1j * n * np.angle(alpha))
    norm2 = float(np.sum(np.abs(c) ** 2))
    if 1.0 - norm2 > tol:
        raise ValueError(
            f"truncation N={N} keeps only {norm2:.3e} of |alpha={alpha}>; need N >= {coherent_guard(r2)}"
        )
    return FockState.from_amplitudes(c)


def cat_state(N: int) -> FockState:
    """(|0> + |1>)/sqrt(2)."""
    if N < 2:
        raise ValueError("cat state needs N >= 2")
    c = np.zeros(N, dtype=complex)
    c[:2] = 1.0 / math.sqrt(2.0)
    return FockState(c)


def density_from_pure(psi: FockState) -> DensityMatrix:
    v = psi.coeffs
    return DensityMatrix(np.outer(v, v.conj()))


def as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, FockState):
        return density_from_pure(state)
    raise TypeError(f"expected FockState or DensityMatrix, got {type(state).__name__}")


def _complex_list(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def state_to_json(state) -> dict:
    if isinstance(state, FockState):
        return {"dim": state.N, "coeffs": _complex_list(state.coeffs)}
    rho = as_density(state)
    return {"dim": rho.N, "rho": [_complex_list(row) for row in rho.entries]}


def state_from_json(obj: dict):
    """Parse {"dim", "coeffs"} into a FockState or {"dim", "rho"} into a DensityMatrix."""
    dim = int(obj["dim"])
    if "coeffs" in obj:
        amps = np.array([complex(re, im) for re, im in obj["coeffs"]])
        if amps.size != dim:
            raise ValueError(f"coeffs has {amps.size} entries, dim says {dim}")
        return FockState.from_amplitudes(amps)
    if "rho" in obj:
        rho = np.array([[complex(re, im) for re, im in row] for row in obj["rho"]])
        if rho.shape != (dim, dim):
            raise ValueError(f"rho has shape {rho.shape}, dim says {dim}")
        return DensityMatrix(rho)
    raise ValueError("state file needs either 'coeffs' or 'rho'")


def load_state(path) -> FockState | DensityMatrix:
    return state_from_json(json.loads(Path(path).read_text()))


def save_state(state, path) -> None:
    Path(path).write_text(json.dumps(state_to_json(state)))
