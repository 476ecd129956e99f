"""Filter functions and the Wigner, s-parametrised and Shubin-tau parity matrices."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .displacement import squeeze_matrix
from .specfun import sinc

KINDS = ("wigner", "s", "tau", "born-jordan")
PROVENANCES = ("exact", "recursive", "quadrature", "expm-composition", "closed-form")


@dataclass(frozen=True)
class FilterKind:
    """Which distribution a parity operator encodes.

    ``tag`` is one of ``wigner``, ``s``, ``tau``, ``born-jordan``; ``param`` holds
    s or tau for the parametrised families.
    """

    tag: str
    param: float | None = None

    def __post_init__(self):
        if self.tag not in KINDS:
            raise ValueError(f"unknown filter kind {self.tag!r}")
        if self.tag == "s":
            if self.param is None or not -1.0 <= self.param <= 1.0:
                raise ValueError("s-parametrised filter needs s in [-1, 1]")
        elif self.tag == "tau":
            if self.param is None or not 0.0 < self.param < 1.0:
                raise ValueError("tau-parametrised filter needs tau in (0, 1)")
        elif self.param is not None:
            raise ValueError(f"{self.tag} takes no parameter")

    @classmethod
    def wigner(cls):
        return cls("wigner")

    @classmethod
    def s_param(cls, s: float):
        return cls("s", float(s))

    @classmethod
    def tau_param(cls, tau: float):
        return cls("tau", float(tau))

    @classmethod
    def born_jordan(cls):
        return cls("born-jordan")

    @property
    def is_real(self) -> bool:
        """Whether K*(-Omega) = K(Omega), i.e. Hermitian parity operator."""
        return self.tag != "tau" or self.param == 0.5

    @property
    def rotation_invariant(self) -> bool:
        return self.tag in ("wigner", "s")

    @property
    def label(self) -> str:
        if self.param is None:
            return self.tag
        return f"{self.tag}={self.param:g}"

    def __call__(self, x, p):
        return filter_eval(self, x, p)


def filter_eval(kind: FilterKind, x, p):
    """K(x, p) = exp[i(2 tau - 1) p x / 2 + s (x^2 + p^2)/4], or sinc(p x / 2)."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if kind.tag == "wigner":
        out = np.ones(np.broadcast(x, p).shape, dtype=complex)
    elif kind.tag == "s":
        out = np.exp(kind.param * (x * x + p * p) / 4.0).astype(complex)
    elif kind.tag == "tau":
        out = np.exp(1j * (2.0 * kind.param - 1.0) * p * x / 2.0)
    else:
        out = np.asarray(sinc(p * x / 2.0), dtype=complex)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class ParityMatrix:
    kind: FilterKind
    entries: np.ndarray
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        e = np.array(self.entries, dtype=complex)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("parity matrix must be square")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    @property
    def is_diagonal(self) -> bool:
        e = self.entries
        return not np.any(e - np.diag(np.diag(e)))

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def spectral_norm(self) -> float:
        return float(np.linalg.norm(self.entries, 2))

    def to_json(self) -> dict:
        return {
            "kind": self.kind.label,
            "dim": self.N,
            "provenance": self.provenance,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ParityMatrix":
        kind = parse_kind(obj["kind"])
        e = np.array([[complex(re, im) for re, im in row] for row in obj["entries"]])
        if e.shape != (obj["dim"], obj["dim"]):
            raise ValueError("entries do not match dim")
        return cls(kind, e, obj.get("provenance", "exact"))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))


def parse_kind(label: str) -> FilterKind:
    """Inverse of ``FilterKind.label`` (``wigner``, ``s=-0.5``, ``tau=0.3``, ``born-jordan``)."""
    tag, _, val = label.partition("=")
    if tag in ("bj", "BJ"):
        tag = "born-jordan"
    if tag == "husimi":
        return FilterKind.s_param(-1.0)
    return FilterKind(tag, float(val) if val else None)


def parity_wigner(N: int) -> ParityMatrix:
    return ParityMatrix(FilterKind.wigner(), np.diag((-1.0) ** np.arange(N)), "closed-form")


def parity_s_diagonal(s: float, N: int) -> np.ndarray:
    n = np.arange(N)
    # 0**0 = 1 gives the s = -1 projector
    return (-1.0) ** n * (1.0 + s) ** n / (1.0 - s) ** (n + 1)


def parity_s(s: float, N: int) -> ParityMatrix:
    """Diagonal Pi_s with entries (-1)^n (1+s)^n / (1-s)^(n+1); bounded only for s <= 0."""
    s = float(s)
    if s > 0:
        raise ValueError("Pi_s is unbounded for s > 0; probe such distributions through the filter instead")
    if s < -1:
        raise ValueError("s must lie in [-1, 0]")
    kind = FilterKind.wigner() if s == 0 else FilterKind.s_param(s)
    return ParityMatrix(kind, np.diag(parity_s_diagonal(s, N)), "closed-form")


def tau_to_xi(tau: float) -> float:
    return math.log(tau / (1.0 - tau))


def parity_tau(tau: float, N: int) -> ParityMatrix:
    """Pi_tau = cosh(xi/2) S(xi) Pi with e^xi = tau/(1 - tau)."""
    tau = float(tau)
    if not 0.0 < tau < 1.0:
        raise ValueError("tau must lie strictly between 0 and 1")
    xi = tau_to_xi(tau)
    sq = squeeze_matrix(xi, N)
    mat = math.cosh(xi / 2.0) * sq.entries * ((-1.0) ** np.arange(N))[None, :]
    return ParityMatrix(FilterKind.tau_param(tau), mat, "expm-composition")


def tau_norm_bound(tau: float) -> float:
    return 1.0 / math.sqrt(4.0 * (tau - tau * tau))


def cohen_kernel_theta(s: float, x, p):
    """Gaussian Cohen kernel -(1/(pi s)) exp[(x^2 + p^2)/s] of the s-parametrised family."""
    if s >= 0:
        raise ValueError("Cohen kernel is a function only for s < 0")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    out = -np.exp((x * x + p * p) / s) / (math.pi * s)
    return out if out.ndim else float(out)
