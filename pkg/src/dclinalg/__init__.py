"""Linear algebra over the dual complex numbers ``p + q*eps`` with ``eps**2 = 0``.

Scalars, vectors and matrices; norms; the unitary decomposition of Hermitian
matrices; the SVD with rank and appreciable rank; and Eckart-Young optimal
truncation.
"""

__version__ = "0.1.0"

from .array import (
    DCMatrix,
    DCVector,
    adjoint,
    complete_unitary,
    extend_to_unitary,
    fro_norm,
    hstack,
    inner,
    is_hermitian,
    is_partially_unitary,
    is_unitary,
    mat_mul,
    mat_vec,
    transpose,
    unitarity_defect,
    vec_norm2,
    vstack,
)
from .estimator import DualTruncatedSVD
from .exceptions import (
    ClusterGapTooSmall,
    ConstructionError,
    ConvergenceError,
    DimensionMismatch,
    DomainError,
    DualAlgebraError,
    NotAppreciable,
    NotHermitian,
    NotPartiallyUnitary,
    ParseError,
    ShapeError,
    ZeroVector,
)
from .scalar import (
    DualComplex,
    DualNumber,
    Ordering,
    dc_conj,
    dc_inv,
    dc_magnitude,
    dc_mul,
    dn_approx_eq,
    dn_cmp,
    dn_inv,
    dn_mul,
    dn_sqrt,
    format_dual,
    parse_dual,
)
from .spectral import Definiteness, HermEig, classify_definiteness, gram_eig, hermitian_eig
from .svd import SvdResult, arank, lowrank_error, rank, svd, truncate, truncate_factors, truncate_indices
from .validation import check_dual_array
