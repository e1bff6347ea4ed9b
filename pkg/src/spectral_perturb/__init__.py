"""Eigenvalue-counting bounds for compactly perturbed matrices, checked numerically."""
from ._linalg import ConvergenceError, as_matrix, eigvals, op_norm, singular_values
from .bounds import (
    BoundReport,
    check_carl,
    check_carl_grid,
    cor1_check,
    ex2_refute_31,
    infimum_form,
    sweep_pair,
    thm1_bound,
    thm2_bound,
)
from .gallery import GallerySpec, make_circulant_pair, make_random_pair, make_volterra, random_ensemble
from .hilbert import numerical_range, pietsch_check, schur_chain, thm3_check
from .lorentz import INF, LorentzParams, lorentz_norm, weak_norm_by_counting
from .matrixio import MatrixParseError, load_matrix, save_matrix
from .snumbers import approximation_numbers, entropy_lower, entropy_oracle, entropy_upper, ideal_norm
from .special import lambert_w, phi_p, phi_p_ceiling, pietsch_constant, thm1_constant
from .spectral import (
    counting_function,
    eigen_profile,
    power_norm_sup,
    resolvent_bound,
    rota_similarity,
    spectral_radius,
)

__version__ = "0.1.0"
