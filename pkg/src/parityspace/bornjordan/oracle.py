"""Quadrature constructions of the Born-Jordan parity matrix, independent of the finite sums."""
from __future__ import annotations

import math

import numpy as np
import scipy.integrate
from scipy.special import eval_genlaguerre, gammaln

from ..displacement import squeeze_elements
from ..parity import FilterKind, ParityMatrix, parity_tau, tau_to_xi

METHODS = ("sinc-displacement", "sech-squeeze", "tau-average")
ORACLE_MAX_N = 40
GH_LADDER = (32, 64, 128, 256)
REFINE_TOL = 1e-8
# sech(xi/2)/4 integrates to below 1e-12 outside [-60, 60]
XI_CUTOFF = 60.0
TAU_DELTA = 0.12


class QuadratureError(RuntimeError):
    pass


def _reduced_displacement(alpha: np.ndarray, m: int, n: int) -> np.ndarray:
    """e^{|alpha|^2/2} D(alpha)_{mn}, via scipy's Laguerre polynomials."""
    if m < n:
        return (-1) ** (n - m) * np.conj(_reduced_displacement(alpha, n, m))
    pref = math.exp(0.5 * (gammaln(n + 1) - gammaln(m + 1)))
    return pref * alpha ** (m - n) * eval_genlaguerre(n, m - n, np.abs(alpha) ** 2)


def _gauss_hermite_pass(N: int, nodes: int) -> np.ndarray:
    # x = 2u turns the e^{-(x^2+p^2)/4} envelope of D into the Hermite weight
    u, w = np.polynomial.hermite.hermgauss(nodes)
    X, P = np.meshgrid(2.0 * u, 2.0 * u, indexing="ij")
    W = np.outer(w, w) * 4.0
    K = np.sinc(P * X / (2.0 * np.pi))
    alpha = (X + 1j * P) / math.sqrt(2.0)
    WK = W * K
    out = np.zeros((N, N), dtype=complex)
    for m in range(N):
        for n in range(N):
            out[m, n] = (WK * _reduced_displacement(alpha, m, n)).sum() / (4.0 * math.pi)
    return out


def _oracle_sinc(N: int) -> np.ndarray:
    prev = None
    for nodes in GH_LADDER:
        cur = _gauss_hermite_pass(N, nodes)
        if prev is not None and np.abs(cur - prev).max() < REFINE_TOL:
            if np.abs(cur.imag).max() > REFINE_TOL:
                raise QuadratureError("sinc-displacement integral is not real")
            return cur.real
        prev = cur
    raise QuadratureError("Gauss-Hermite refinement did not settle below 1e-8")


def _parity_signs(N: int) -> np.ndarray:
    return (-1.0) ** np.arange(N)


def _oracle_sech(N: int) -> np.ndarray:
    def f(x):
        return squeeze_elements(x, N) / (4.0 * math.cosh(x / 2.0))

    res, err = scipy.integrate.quad_vec(f, -XI_CUTOFF, XI_CUTOFF, epsabs=1e-13, epsrel=1e-12, points=[0.0])
    if not np.isfinite(err) or err > 1e-9:
        raise QuadratureError(f"sech-squeeze quadrature error estimate {err:.2e}")
    return res * _parity_signs(N)[None, :]


def _oracle_tau(N: int) -> np.ndarray:
    """Integrate Pi_tau over tau: expm-built operators in the bulk, xi substitution near 0 and 1."""
    lo, hi = TAU_DELTA, 1.0 - TAU_DELTA

    def bulk(t):
        return parity_tau(t, N).entries.real

    mid, err_mid = scipy.integrate.quad_vec(bulk, lo, hi, epsabs=1e-12, epsrel=1e-11)
    # d tau = d xi / (4 cosh^2(xi/2)), Pi_tau = cosh(xi/2) S(xi) Pi
    def tail(x):
        return squeeze_elements(x, N) / (4.0 * math.cosh(x / 2.0))

    xl, xh = tau_to_xi(lo), tau_to_xi(hi)
    left, err_l = scipy.integrate.quad_vec(tail, -XI_CUTOFF, xl, epsabs=1e-13, epsrel=1e-12)
    right, err_r = scipy.integrate.quad_vec(tail, xh, XI_CUTOFF, epsabs=1e-13, epsrel=1e-12)
    err = err_mid + err_l + err_r
    if not np.isfinite(err) or err > 1e-9:
        raise QuadratureError(f"tau-average quadrature error estimate {err:.2e}")
    return mid + (left + right) * _parity_signs(N)[None, :]


_DISPATCH = {
    "sinc-displacement": _oracle_sinc,
    "sech-squeeze": _oracle_sech,
    "tau-average": _oracle_tau,
}


def bj_matrix_quadrature_oracle(N: int, method: str = "sech-squeeze") -> ParityMatrix:
    if method not in _DISPATCH:
        raise ValueError(f"method must be one of {METHODS}")
    if not 1 <= N <= ORACLE_MAX_N:
        raise ValueError(f"oracle dimension must lie in [1, {ORACLE_MAX_N}]")
    return ParityMatrix(FilterKind.born_jordan(), _DISPATCH[method](N), "quadrature")
