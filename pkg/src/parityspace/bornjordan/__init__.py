"""Born-Jordan parity matrix: exact sums, fast recursion, quadrature oracles, spectra."""
from .cache import ExactCache, default_cache_dir
from .coefficients import CoeffC, CoeffXi, coeff_c, coeff_xi, phi, phi_exact
from .exact import BJExactEntry, bj_diagonal, bj_element_exact, bj_matrix_exact
from .oracle import METHODS, QuadratureError, bj_matrix_quadrature_oracle
from .recursion import (
    BJRecursionState,
    ConjectureViolation,
    bj_matrix_recursive,
    build_m_table,
)
from .spectral import SpectralReport, bj_spectral_report, eigen_residual, psi_plus_zero_fock

__all__ = [
    "BJExactEntry", "BJRecursionState", "CoeffC", "CoeffXi", "ConjectureViolation",
    "ExactCache", "METHODS", "QuadratureError", "SpectralReport",
    "bj_diagonal", "bj_element_exact", "bj_matrix_exact", "bj_matrix_quadrature_oracle",
    "bj_matrix_recursive", "bj_spectral_report", "build_m_table", "coeff_c", "coeff_xi",
    "default_cache_dir", "eigen_residual", "phi", "phi_exact", "psi_plus_zero_fock",
]
