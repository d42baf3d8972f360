"""Sebastiani-Thom detection and Torelli verdicts for smooth hypersurfaces.

Everything is exact: coefficients live in QQ or a prime field F_p, and all
decisions reduce to ranks of matrices over that field.
"""

from .cubic import corollary_check, cubic_invariant, j_is_zero
from .errors import (
    InternalConsistencyError,
    NotSmoothError,
    PreconditionError,
    UnsupportedInput,
)
from .fields import GF, QQ, parse_field
from .gradedlinalg import Matrix, Subspace, kernel, member, rank, rref
from .jacobi import is_smooth, jacobi_piece, log_derivation_dims
from .polyring import (
    CoordinateChange,
    HomPoly,
    format_poly,
    parse_poly,
    substitute_linear,
)
from .sebastiani import (
    NeedsExtension,
    NotST,
    STDecomposition,
    extract_decomposition,
    is_st,
    split_completely,
    st_space,
    verify_decomposition,
)
from .torelli import (
    Status,
    divisors_with_jacobi_piece,
    jacobi_jump_indicator,
    jump_locus_filter,
    pencil_hilbert_invariance,
    torelli_verdict,
)

__version__ = "0.1.0"
