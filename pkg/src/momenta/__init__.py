"""Moment matrices of positive unital linear maps on matrix algebras.

The package computes the images ``Phi(A^k)`` of matrix powers under
positive unital linear maps, assembles the block matrices (Hankel, shifted,
and product-weighted forms) that such moments render positive semidefinite,
verifies the classical scalar consequences (square-moment, variance, and
inverse-moment bounds), and extracts upper/lower bounds on the extreme
eigenvalues of a Hermitian matrix from a cubic in its central moments.
"""

from .errors import ConvergenceError, DomainError, ShapeError
from .linalg import (
    DEFAULT_PSD_TOL,
    HermitianSpectrum,
    PsdVerdict,
    frobenius,
    hadamard,
    hermitian_eig,
    hermitian_part,
    hermitian_with_spectrum,
    is_psd,
    kron,
    matrix_function,
    matrix_log,
    matrix_power,
    random_hermitian,
    random_normal_matrix,
    random_psd,
    random_unitary,
    symmetrize,
)
from .maps import (
    MAP_KINDS,
    Compression,
    Identity,
    MapValidation,
    Mixture,
    NormalizedTrace,
    Pinching,
    PositiveUnitalMap,
    VectorState,
    apply,
    random_map,
    validate,
)
from .moments import (
    BLOCK_KINDS,
    BlockMatrixSpec,
    CheckResult,
    MomentTable,
    build_block,
    build_log_deficit_block,
    build_log_endpoint_blocks,
    build_normal_block,
    build_refinement_chain,
    centered_fourth_moment_slack,
    distinct_eigenvalues,
    moment_table,
    scalar_bracket_hankel,
    scalar_checks,
    scalar_shift_hankel,
)
from .eigenbounds import (
    CentralMoments,
    DegenerateMomentsError,
    EigenBoundReport,
    central_moments,
    cubic_coefficients,
    determinant_oracle,
    gamma_value,
    solve_cubic,
    spectral_bounds,
    wolkowicz_styan,
)

__version__ = "0.1.0"

__all__ = [
    "BLOCK_KINDS",
    "BlockMatrixSpec",
    "CentralMoments",
    "CheckResult",
    "Compression",
    "ConvergenceError",
    "DEFAULT_PSD_TOL",
    "DegenerateMomentsError",
    "DomainError",
    "EigenBoundReport",
    "HermitianSpectrum",
    "Identity",
    "MAP_KINDS",
    "MapValidation",
    "Mixture",
    "MomentTable",
    "NormalizedTrace",
    "Pinching",
    "PositiveUnitalMap",
    "PsdVerdict",
    "ShapeError",
    "VectorState",
    "apply",
    "build_block",
    "build_log_deficit_block",
    "build_log_endpoint_blocks",
    "build_normal_block",
    "build_refinement_chain",
    "centered_fourth_moment_slack",
    "central_moments",
    "cubic_coefficients",
    "determinant_oracle",
    "distinct_eigenvalues",
    "frobenius",
    "gamma_value",
    "hadamard",
    "hermitian_eig",
    "hermitian_part",
    "hermitian_with_spectrum",
    "is_psd",
    "kron",
    "matrix_function",
    "matrix_log",
    "matrix_power",
    "moment_table",
    "random_hermitian",
    "random_map",
    "random_normal_matrix",
    "random_psd",
    "random_unitary",
    "scalar_bracket_hankel",
    "scalar_checks",
    "scalar_shift_hankel",
    "solve_cubic",
    "spectral_bounds",
    "symmetrize",
    "validate",
    "wolkowicz_styan",
]
