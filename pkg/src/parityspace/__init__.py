"""Quantum phase-space distributions as displaced-parity expectation values in a truncated Fock basis."""
from .bornjordan import (
    BJExactEntry,
    ConjectureViolation,
    bj_diagonal,
    bj_element_exact,
    bj_matrix_exact,
    bj_matrix_quadrature_oracle,
    bj_matrix_recursive,
    bj_spectral_report,
    psi_plus_zero_fock,
)
from .displacement import characteristic_function, displacement_matrix, squeeze_matrix
from .distributions import (
    DistributionField,
    PhaseGrid,
    born_jordan,
    evaluate,
    husimi,
    marginals,
    s_dist,
    tau_dist,
    total_integral,
    wigner,
)
from .fock import (
    DensityMatrix,
    FockState,
    cat_state,
    coherent_state,
    density_from_pure,
    number_state,
)
from .kernels import BACKEND
from .parity import FilterKind, ParityMatrix, filter_eval, parity_s, parity_tau, parity_wigner
from .quantize import quantize_monomial, rule_discrepancy

__version__ = "0.1.0"
