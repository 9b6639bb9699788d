"""Quaternionic slice-function toolkit.

Matrices over the quaternions with S-spectra and Riesz projectors,
power series under the star product, Blaschke factors on the unit ball,
and Stein-certified J-unitary realizations with their factorizations.
"""

from .errors import (
    BadSignatureError,
    CompletionFailureError,
    ContourOnSpectrumError,
    DegenerateChoiceError,
    InvalidModulusError,
    InvalidSpecError,
    NotDiagonalizableError,
    NotHermitianError,
    NotInvertibleAtZeroError,
    NotObservableError,
    OnPoleSphereError,
    OnSpectrumError,
    QschurError,
    RankDeficiencyError,
    ShapeError,
    SingularMatrixError,
    SpectrumOnUnitSphereError,
    SteinSingularError,
    ZeroVectorError,
)
from .quat import (
    ONE,
    QI,
    QJ,
    QK,
    I_DEFAULT,
    Quaternion,
    Sphere,
    UnitImaginary,
    char_poly_value,
    quaternion_in_slice,
    slice_decompose,
    sphere_of,
)
from .qmatrix import (
    HermSpectrum,
    QMatrix,
    as_qmatrix,
    block,
    char_operator,
    complex_adjoint,
    from_complex_adjoint,
    gram_schmidt_columns,
    herm_eig,
    hstack,
    indefinite_gram_schmidt,
    inverse,
    is_invertible,
    is_signature_matrix,
    matrix_power,
    null_basis,
    range_basis,
    right_eigen_decomposition,
    right_eigen_spheres,
    s_eigencheck,
    signature_blocks,
    singular_values,
    smallest_singular_value,
    solve,
    solve_right,
    vstack,
)
from .series import (
    SliceSeries,
    series_conj,
    series_sym,
    star_inverse,
    star_left_eval,
    star_mul,
    star_pow,
    star_resolvent,
    star_resolvent_eval,
    star_solve_left,
)
from .sresolvent import (
    ContourSpec,
    SpectralSplit,
    resolvent_eq_residuals,
    riesz_projector,
    riesz_s_part,
    s_resolvent_left,
    s_resolvent_right,
    spectral_split,
)
from .kernels import KernelCoeffs, NegSquares, lower_toeplitz, neg_squares, schur_kernel_coeffs
from .blaschke import (
    DEFAULT_DEGREE,
    BlaschkeProduct,
    BlaschkeReciprocal,
    blaschke_point,
    blaschke_product,
    blaschke_reciprocal,
    blaschke_reciprocal_value,
    blaschke_sphere,
    blaschke_sphere_value,
    blaschke_value,
    tail_bound,
)
from .realization import (
    KLFactorization,
    Realization,
    blaschke_reciprocal_realization,
    cascade,
    j_unitary_complete,
    kernel_identity_residual,
    kernel_identity_residuals,
    krein_langer_compose,
    krein_langer_factor,
    realization_eval,
    realization_series,
    realization_sigma_I,
    stein_solve,
)

__version__ = "0.1.0"
