"""Special functions and exact rationals used throughout the package.

All floating point is float64. Factorial ratios are formed as differences of
log-factorials and exponentiated once, which keeps them finite for indices in
the low thousands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

# Python's Fraction normalises after every operation and keeps a positive
# denominator, which is exactly the contract needed for the exact matrix work.
BigRational = Fraction

ASINH_ONE = math.asinh(1.0)
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class LogFactorialTable:
    """Table of ln(n!) for n = 0..n_max."""

    n_max: int
    values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")
        vals = gammaln(np.arange(self.n_max + 1, dtype=float) + 1.0)
        vals[:2] = 0.0
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, n):
        return self.values[n]

    def sqrt_ratio(self, n: int, m: int) -> float:
        """sqrt(n!/m!) evaluated through one exponentiation."""
        return math.exp(0.5 * (self.values[n] - self.values[m]))


def log_factorial(n):
    return gammaln(np.asarray(n, dtype=float) + 1.0)


def laguerre_assoc(n: int, k: int, x):
    """Generalised Laguerre polynomial L_n^(k)(x) by the three-term recurrence in n.

    ``k`` may be negative as long as ``n + k >= 0``.
    """
    if n < 0 or n + k < 0:
        raise ValueError(f"L_n^(k) needs n >= 0 and n + k >= 0, got n={n}, k={k}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + k - x
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + k - x) * cur - (j + k) * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


def hermite_psi(n: int, x):
    """n-th normalised harmonic-oscillator eigenfunction (hbar = m = omega = 1).

    Uses the normalised Hermite-function recurrence
    psi_{j+1} = sqrt(2/(j+1)) x psi_j - sqrt(j/(j+1)) psi_{j-1}.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = SQRT2 * x * prev
    for j in range(1, n):
        prev, cur = cur, math.sqrt(2.0 / (j + 1)) * x * cur - math.sqrt(j / (j + 1)) * prev
    return cur if cur.ndim else float(cur)


def sinc(x):
    """Unnormalised sinc, sin(x)/x, with sinc(0) = 1."""
    x = np.asarray(x, dtype=float)
    # numpy's sinc is sin(pi t)/(pi t); rescale the argument
    out = np.sinc(x / np.pi)
    return out if out.ndim else float(out)


def sech(x):
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    out = 2.0 * np.exp(-ax) / (1.0 + np.exp(-2.0 * ax))
    return out if out.ndim else float(out)


def log_sech(x):
    """ln(sech x) without overflow for large |x|."""
    ax = np.abs(np.asarray(x, dtype=float))
    return math.log(2.0) - ax - np.log1p(np.exp(-2.0 * ax))


def arcsinh(x):
    out = np.arcsinh(np.asarray(x, dtype=float))
    return out if out.ndim else float(out)


def rational_sqrt_product(coeff: Fraction, radicand: Fraction) -> float:
    """Float value of coeff * sqrt(radicand) for huge or tiny exact rationals.

    The product is squared into one rational before conversion so that the
    intermediate magnitudes never leave the exact domain.
    """
    if coeff == 0:
        return 0.0
    if radicand < 0:
        raise ValueError("radicand must be non-negative")
    mag = math.sqrt(float(coeff * coeff * radicand))
    return mag if coeff > 0 else -mag
