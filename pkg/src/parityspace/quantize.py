"""Weyl and Born-Jordan ordering of monomials x^m p^l as truncated Fock matrices."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .fock import LadderOps

RULES = ("weyl", "born-jordan")
MAX_DEGREE = 8


@dataclass(frozen=True)
class MonomialOperator:
    m: int
    l: int
    rule: str
    matrix: np.ndarray

    @property
    def N(self) -> int:
        return self.matrix.shape[0]

    @property
    def guard(self) -> int:
        return 4 * (self.m + self.l)

    def guarded_block(self) -> np.ndarray:
        k = self.N - self.guard
        return self.matrix[:k, :k]

    def hermiticity_defect(self) -> float:
        b = self.guarded_block()
        return float(np.abs(b - b.conj().T).max())


def _check(m: int, l: int, N: int) -> None:
    if m < 0 or l < 0:
        raise ValueError("exponents must be non-negative")
    if m + l > MAX_DEGREE:
        raise ValueError(f"degree m + l = {m + l} exceeds {MAX_DEGREE}")
    if N < 4 * (m + l) + 16:
        raise ValueError(f"N = {N} below the guard 4(m + l) + 16 = {4 * (m + l) + 16}")


def quantize_monomial(m: int, l: int, rule: str, N: int) -> MonomialOperator:
    """Symmetrised operator for x^m p^l.

    Products are formed in dimension N + m + l and trimmed, so every entry of
    the returned N x N matrix is exact; the guarded block is kept for the
    comparisons anyway.
    """
    if rule not in RULES:
        raise ValueError(f"rule must be one of {RULES}")
    _check(m, l, N)
    ops = LadderOps.build(N + m + l)
    x, p = ops.x_op, ops.p_op
    mp = np.linalg.matrix_power
    xs = [mp(x, k) for k in range(m + 1)]
    pl = mp(p, l)
    if rule == "weyl":
        weights = [comb(m, k) / 2 ** m for k in range(m + 1)]
    else:
        weights = [1.0 / (m + 1)] * (m + 1)
    acc = sum(w * (xs[k] @ pl @ xs[m - k]) for k, w in enumerate(weights))
    mat = np.ascontiguousarray(acc[:N, :N])
    mat.setflags(write=False)
    return MonomialOperator(m, l, rule, mat)


def rule_discrepancy(m: int, l: int, N: int) -> np.ndarray:
    """Born-Jordan minus Weyl on the upper-left N - 4(m + l) block."""
    bj = quantize_monomial(m, l, "born-jordan", N)
    w = quantize_monomial(m, l, "weyl", N)
    return bj.guarded_block() - w.guarded_block()


def quantization_table(max_degree: int, N: int) -> list[dict]:
    rows = []
    for m in range(max_degree + 1):
        for l in range(max_degree + 1 - m):
            d = rule_discrepancy(m, l, N)
            for rule in RULES:
                op = quantize_monomial(m, l, rule, N)
                rows.append({
                    "m": m, "l": l, "rule": rule,
                    "matrix_norm": float(np.linalg.norm(op.guarded_block(), 2)),
                    "discrepancy_norm": float(np.linalg.norm(d, 2)),
                })
    return rows
