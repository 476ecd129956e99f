"""Integer coefficient families c_j^{ab} and xi_j^{abk} and the constants Phi_{ab}^k.

Both families come from repeated differentiation of arcsinh((lambda mu)^{-1/2})
at lambda = mu = 1 and are integers, so they are stored as Python ints and
exposed as ``BigRational`` (``Fraction``) only at the API boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..specfun import ASINH_ONE, BigRational


@lru_cache(maxsize=None)
def _c(a: int, b: int) -> tuple[int, ...]:
    if a < b:
        return _c(b, a)
    if (a, b) == (1, 0):
        return (1,)
    prev = _c(a - 1, b)
    a0 = a - 1
    out = []
    for j in range(a + b):
        lo = prev[j - 1] if j >= 1 else 0
        here = prev[j] if j < len(prev) else 0
        out.append(lo * (4 * a0 + 2 * b + 1 - 2 * j) - 2 * here * (j - a0))
    return tuple(out)


@lru_cache(maxsize=None)
def _xi(a: int, b: int, k: int) -> tuple[int, ...]:
    if a < b:
        return _xi(b, a, k)
    if k == 0:
        return _c(a, b)
    if a + b == 0 and k == 1:
        return (-1,)
    prev = _xi(a, b, k - 1)
    k0 = k - 1
    out = []
    for j in range(a + b + k):
        lo = prev[j - 1] if j >= 1 else 0
        here = prev[j] if j < len(prev) else 0
        out.append(lo * (2 * j - 1 - 3 * (a + b + k0)) + here * (2 * j - a - b - k0))
    return tuple(out)


@lru_cache(maxsize=None)
def xi_sum(a: int, b: int, k: int) -> int:
    """Sum over j of xi_j^{abk}; the only combination the matrix elements need."""
    return sum(_xi(a, b, k))


@dataclass(frozen=True)
class CoeffC:
    a: int
    b: int
    values: tuple[BigRational, ...]


@dataclass(frozen=True)
class CoeffXi:
    a: int
    b: int
    k: int
    values: tuple[BigRational, ...]


def coeff_c(a: int, b: int) -> CoeffC:
    if a < 0 or b < 0 or a + b == 0:
        raise ValueError("c_j^{ab} needs a, b >= 0 and a + b >= 1")
    return CoeffC(a, b, tuple(BigRational(v) for v in _c(a, b)))


def coeff_xi(a: int, b: int, k: int) -> CoeffXi:
    if min(a, b, k) < 0 or a + b + k == 0:
        raise ValueError("xi_j^{abk} needs a, b, k >= 0 and a + b + k >= 1")
    return CoeffXi(a, b, k, tuple(BigRational(v) for v in _xi(a, b, k)))


@dataclass(frozen=True)
class PhiValue:
    """Phi_{ab}^k = rational * sqrt(2), or arcsinh(1) when a = b = k = 0."""

    r_sqrt2: BigRational
    r_arcsinh: BigRational

    def __float__(self) -> float:
        return float(self.r_sqrt2) * math.sqrt(2.0) + float(self.r_arcsinh) * ASINH_ONE


def phi_exact(a: int, b: int, k: int) -> PhiValue:
    if min(a, b, k) < 0:
        raise ValueError("indices must be non-negative")
    if a + b + k == 0:
        return PhiValue(BigRational(0), BigRational(1))
    sign = -1 if (a + b) % 2 else 1
    return PhiValue(BigRational(sign * xi_sum(a, b, k), 2 ** (2 * a + 2 * b + k)), BigRational(0))


def phi(a: int, b: int, k: int) -> float:
    return float(phi_exact(a, b, k))
