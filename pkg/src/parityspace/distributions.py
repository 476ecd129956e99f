"""Phase-space distributions as displaced-parity expectation values on a grid.

F(x, p) = (1/pi) Tr[rho D(alpha) Pi D(alpha)^dagger] with alpha = (x + ip)/sqrt(2).
Writing rho = sum_i w_i |v_i><v_i| and phi_i = D(-alpha) v_i, each point costs
one (N x N_s) displacement block and a quadratic form, where N_s is the support
of rho. The block D(-alpha)[:N, :N_s] is exact, so the only approximation is
compressing Pi to its leading N x N block.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.integrate
import scipy.signal

from .bornjordan.recursion import bj_matrix_recursive
from .displacement import displacement_columns
from .fock import DensityMatrix, as_density, coherent_guard
from .parity import (
    FilterKind,
    ParityMatrix,
    cohen_kernel_theta,
    parity_s,
    parity_tau,
    parity_wigner,
)

CHUNK_POINTS = 2048
BOUNDARY_TOL = 1e-8


class BoundaryLeakWarning(UserWarning):
    """Field is not negligible on the grid edge, so integrals over it are truncated."""


@dataclass(frozen=True)
class PhaseGrid:
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    np: int

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.p_max > self.p_min):
            raise ValueError("grid ranges must be increasing")
        if self.nx < 2 or self.np < 2:
            raise ValueError("grid needs at least two points per axis")

    @classmethod
    def square(cls, half_width: float, n: int) -> "PhaseGrid":
        return cls(-half_width, half_width, -half_width, half_width, n, n)

    @classmethod
    def parse(cls, spec: str) -> "PhaseGrid":
        """From ``"xmin:xmax:nx,pmin:pmax:np"``."""
        try:
            xs, ps = spec.split(",")
            x0, x1, nx = xs.split(":")
            p0, p1, n_p = ps.split(":")
            return cls(float(x0), float(x1), float(p0), float(p1), int(nx), int(n_p))
        except ValueError as exc:
            raise ValueError(f"bad grid spec {spec!r}; expected xmin:xmax:nx,pmin:pmax:np") from exc

    def to_spec(self) -> str:
        return f"{self.x_min:g}:{self.x_max:g}:{self.nx},{self.p_min:g}:{self.p_max:g}:{self.np}"

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ps(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.np - 1)

    def mesh(self):
        return np.meshgrid(self.xs, self.ps, indexing="ij")

    def max_abs_alpha_sq(self) -> float:
        return 0.5 * (max(self.x_min ** 2, self.x_max ** 2) + max(self.p_min ** 2, self.p_max ** 2))

    def padded(self, kx: int, kp: int) -> "PhaseGrid":
        return PhaseGrid(
            self.x_min - kx * self.dx, self.x_max + kx * self.dx,
            self.p_min - kp * self.dp, self.p_max + kp * self.dp,
            self.nx + 2 * kx, self.np + 2 * kp,
        )


@dataclass(frozen=True)
class DistributionField:
    grid: PhaseGrid
    values: np.ndarray
    kind: FilterKind

    @property
    def max_imag(self) -> float:
        return float(np.abs(self.values.imag).max())

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def to_csv(self, path) -> None:
        write_field_csv(self, path)


@dataclass(frozen=True)
class Marginals:
    x: np.ndarray
    px: np.ndarray
    p: np.ndarray
    pp: np.ndarray


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _trim_ensemble(rho):
    rho = as_density(rho)
    ns = rho.support()
    sub = rho.entries[:ns, :ns]
    w, v = np.linalg.eigh(sub)
    keep = np.abs(w) > 1e-15
    return w[keep], v[:, keep]


def _expectations(weights, vecs, pi: np.ndarray, diagonal: bool, alphas: np.ndarray) -> np.ndarray:
    N = pi.shape[0]
    ns = vecs.shape[0]
    blocks = displacement_columns(-alphas, N, ns)          # (P, N, ns)
    phi = blocks @ vecs                                  # (P, N, r)
    if diagonal:
        d = np.diag(pi)
        q = np.einsum("m,pmr->pr", d, np.abs(phi) ** 2)
    else:
        q = np.einsum("pmr,mn,pnr->pr", phi.conj(), pi, phi, optimize=True)
    return (q @ weights) / math.pi


def _evaluate_alphas(rho, parity: ParityMatrix, alphas: np.ndarray, jobs: int | None) -> np.ndarray:
    w, v = _trim_ensemble(rho)
    pi = parity.entries
    if v.shape[0] > pi.shape[0]:
        raise ValueError(f"state support {v.shape[0]} exceeds parity dimension {pi.shape[0]}")
    diagonal = parity.is_diagonal
    flat = np.asarray(alphas, dtype=complex).ravel()
    chunks = [flat[i:i + CHUNK_POINTS] for i in range(0, flat.size, CHUNK_POINTS)]
    jobs = jobs or _default_jobs()
    if jobs == 1 or len(chunks) == 1:
        parts = [_expectations(w, v, pi, diagonal, c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda c: _expectations(w, v, pi, diagonal, c), chunks))
    out = np.concatenate(parts) if parts else np.zeros(0, dtype=complex)
    return out.reshape(np.shape(alphas))


def evaluate(rho, parity: ParityMatrix, grid: PhaseGrid, jobs: int | None = None) -> DistributionField:
    """Field of ``rho`` for the given parity matrix; rho is zero-padded to its dimension."""
    rho = as_density(rho)
    if rho.N > parity.N and rho.support() > parity.N:
        raise ValueError(f"density dimension {rho.N} exceeds parity dimension {parity.N}")
    X, P = grid.mesh()
    vals = _evaluate_alphas(rho, parity, (X + 1j * P) / math.sqrt(2.0), jobs)
    return DistributionField(grid, vals, parity.kind)


def evaluate_points(rho, parity: ParityMatrix, x, p, jobs: int | None = None) -> np.ndarray:
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    return _evaluate_alphas(rho, parity, (x + 1j * p) / math.sqrt(2.0), jobs)


def working_dimension(rho, max_abs_alpha_sq: float) -> int:
    """Parity dimension that keeps D(-alpha) rho D(alpha) inside the truncated space."""
    return as_density(rho).support() + coherent_guard(max_abs_alpha_sq)


@lru_cache(maxsize=8)
def _bj_matrix(N: int) -> ParityMatrix:
    return bj_matrix_recursive(N)[0]


def parity_for(kind: FilterKind, N: int) -> ParityMatrix:
    if kind.tag == "wigner":
        return parity_wigner(N)
    if kind.tag == "s":
        return parity_s(kind.param, N)
    if kind.tag == "tau":
        return parity_tau(kind.param, N)
    return _bj_matrix(N)


def distribution(rho, kind: FilterKind, grid: PhaseGrid, N: int | None = None,
                 jobs: int | None = None) -> DistributionField:
    """Evaluate a named kind; N defaults to the working dimension for the grid."""
    if N is None:
        N = working_dimension(rho, grid.max_abs_alpha_sq())
    return evaluate(rho, parity_for(kind, N), grid, jobs)


def wigner(rho, grid, N=None, jobs=None):
    return distribution(rho, FilterKind.wigner(), grid, N, jobs)


def husimi(rho, grid, N=None, jobs=None):
    return distribution(rho, FilterKind.s_param(-1.0), grid, N, jobs)


def s_dist(rho, s, grid, N=None, jobs=None):
    if s > 0:
        raise ValueError("s > 0 needs an unbounded parity operator")
    kind = FilterKind.wigner() if s == 0 else FilterKind.s_param(s)
    return distribution(rho, kind, grid, N, jobs)


def tau_dist(rho, tau, grid, N=None, jobs=None):
    return distribution(rho, FilterKind.tau_param(tau), grid, N, jobs)


def born_jordan(rho, grid, N=None, jobs=None):
    return distribution(rho, FilterKind.born_jordan(), grid, N, jobs)


def bj_fock_decomposition(n: int, grid: PhaseGrid, N: int | None = None) -> dict:
    """Split the Born-Jordan field of |n><n| into diagonal (radial) and off-diagonal parts."""
    if N is None:
        N = n + 1 + coherent_guard(grid.max_abs_alpha_sq())
    if not 0 <= n < N:
        raise ValueError("n must lie below the truncation")
    pi = _bj_matrix(N).entries.real
    d = np.diag(pi)
    off = pi - np.diag(d)
    X, P = grid.mesh()
    alphas = ((X + 1j * P) / math.sqrt(2.0)).ravel()
    col = displacement_columns(-alphas, N, n + 1)[:, :, n]          # <mu|D(-alpha)|n>
    radial = (np.abs(col) ** 2 @ d) / math.pi
    nonradial = np.einsum("pm,mk,pk->p", col.conj(), off, col, optimize=True) / math.pi
    kind = FilterKind.born_jordan()
    return {
        "radial": DistributionField(grid, radial.reshape(X.shape).astype(complex), kind),
        "nonradial": DistributionField(grid, nonradial.reshape(X.shape), kind),
    }


def _boundary_max(values: np.ndarray) -> float:
    v = np.abs(values)
    return float(max(v[0].max(), v[-1].max(), v[:, 0].max(), v[:, -1].max()))


def marginals(field: DistributionField, tol: float = BOUNDARY_TOL) -> Marginals:
    """Trapezoidal integrals along p (x-marginal) and along x (p-marginal)."""
    edge = _boundary_max(field.values)
    if edge > tol:
        warnings.warn(f"field reaches {edge:.2e} on the grid boundary", BoundaryLeakWarning, stacklevel=2)
    g = field.grid
    v = field.values.real
    px = scipy.integrate.trapezoid(v, g.ps, axis=1)
    pp = scipy.integrate.trapezoid(v, g.xs, axis=0)
    return Marginals(g.xs, px, g.ps, pp)


def total_integral(field: DistributionField) -> float:
    g = field.grid
    inner = scipy.integrate.trapezoid(field.values.real, g.ps, axis=1)
    return float(scipy.integrate.trapezoid(inner, g.xs))


def cohen_convolution_check(rho, s: float, grid: PhaseGrid, kernel_tol: float = 1e-12,
                            jobs: int | None = None) -> float:
    """max |F_s - theta_s * W| on ``grid``, the convolution done by FFT on a padded grid."""
    if not s < 0:
        raise ValueError("the Gaussian Cohen kernel exists only for s < 0")
    radius = math.sqrt(-s * math.log(1.0 / kernel_tol))
    kx = int(math.ceil(radius / grid.dx))
    kp = int(math.ceil(radius / grid.dp))
    big = grid.padded(kx, kp)
    w = wigner(rho, big, jobs=jobs).values.real
    edge = _boundary_max(w)
    if edge > kernel_tol * 1e2:
        raise ValueError(f"padding insufficient: Wigner function is {edge:.1e} on the padded edge")
    ox = np.arange(-kx, kx + 1) * grid.dx
    op = np.arange(-kp, kp + 1) * grid.dp
    theta = cohen_kernel_theta(s, ox[:, None], op[None, :])
    conv = scipy.signal.fftconvolve(w, theta, mode="valid") * grid.dx * grid.dp
    direct = s_dist(rho, s, grid, jobs=jobs).values.real
    return float(np.abs(conv - direct).max())


def covariance_check(rho, kind: FilterKind, shift_steps: tuple[int, int], grid: PhaseGrid,
                     jobs: int | None = None) -> float:
    """Compare the field of D(w) rho D(w)^dagger with the lattice-shifted field of rho.

    ``shift_steps`` gives w as whole grid steps (i dx, j dp), so no interpolation is needed.
    """
    i, j = shift_steps
    if abs(i) >= grid.nx or abs(j) >= grid.np:
        raise ValueError("shift leaves the grid")
    rho = as_density(rho)
    w_alpha = complex(i * grid.dx, j * grid.dp) / math.sqrt(2.0)
    r2 = max(grid.max_abs_alpha_sq(), abs(w_alpha) ** 2)
    ns = rho.support()
    # D(w) rho D(w)^dagger stays inside N levels when N covers the shift guard
    N = ns + coherent_guard(abs(w_alpha) ** 2) + coherent_guard(r2)
    blk = displacement_columns(np.array([w_alpha]), N, ns)[0]
    moved = blk @ rho.entries[:ns, :ns] @ blk.conj().T
    moved = 0.5 * (moved + moved.conj().T)
    moved = DensityMatrix(moved / np.trace(moved).real)
    parity = parity_for(kind, N)
    f_moved = evaluate(moved, parity, grid, jobs).values
    f_orig = evaluate(rho, parity, grid, jobs).values
    sx = slice(max(i, 0), grid.nx + min(i, 0))
    sp = slice(max(j, 0), grid.np + min(j, 0))
    tx = slice(max(-i, 0), grid.nx + min(-i, 0))
    tp = slice(max(-j, 0), grid.np + min(-j, 0))
    return float(np.abs(f_moved[sx, sp] - f_orig[tx, tp]).max())


def rotation_deviation(rho, parity: ParityMatrix, grid: PhaseGrid, angle: float,
                       jobs: int | None = None) -> float:
    """max |F(R_angle Omega) - F(Omega)| over the grid points."""
    X, P = grid.mesh()
    c, s = math.cos(angle), math.sin(angle)
    base = evaluate_points(rho, parity, X, P, jobs)
    rot = evaluate_points(rho, parity, c * X - s * P, s * X + c * P, jobs)
    return float(np.abs(rot - base).max())


def write_field_csv(field: DistributionField, path) -> None:
    g = field.grid
    X, P = g.mesh()
    with open(path, "w") as fh:
        fh.write(f"# kind={field.kind.label} nx={g.nx} np={g.np}\n")
        for x, p, z in zip(X.ravel(), P.ravel(), field.values.ravel()):
            fh.write(f"{float(x)!r},{float(p)!r},{float(z.real)!r},{float(z.imag)!r}\n")


def read_field_csv(path) -> DistributionField:
    from .parity import parse_kind

    with open(path) as fh:
        header = fh.readline().lstrip("#").split()
        meta = dict(tok.split("=", 1) for tok in header)
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    nx, n_p = int(meta["nx"]), int(meta["np"])
    xs = data[:, 0].reshape(nx, n_p)[:, 0]
    ps = data[:, 1].reshape(nx, n_p)[0]
    grid = PhaseGrid(xs[0], xs[-1], ps[0], ps[-1], nx, n_p)
    vals = (data[:, 2] + 1j * data[:, 3]).reshape(nx, n_p)
    return DistributionField(grid, vals, parse_kind(meta["kind"]))


def write_marginal_csv(axis, values, path, label: str = "x") -> None:
    with open(path, "w") as fh:
        fh.write(f"# marginal={label}\n")
        for a, v in zip(axis, values):
            fh.write(f"{float(a)!r},{float(v)!r}\n")
