"""Product vectors, simplicial faces of separable states and three-qubit PPT entangled edge states."""

from .errors import (
    ContractViolation,
    DegenerateGammaSpanError,
    NoPptBoundaryError,
    NotInSpanError,
    NumericFailure,
    SepfaceError,
    UnsupportedShapeError,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    hermitian_eigenvalues,
    kernel_basis,
    numeric_rank,
    orthonormalize,
    solve_in_span,
    univariate_roots,
)
from .tensor import (
    HermitianOperator,
    PartyShape,
    ProductVector,
    flatten,
    mix,
    partial_conjugate,
    partial_transpose,
    pure_state,
    regroup,
)
from .enumeration import (
    EnumerationResult,
    complement_of,
    enumerate_in_subspace,
    membership_residual,
    oracle_grid_search,
    span_of,
)
from .position import (
    FaceCertificate,
    FourClassification,
    GpReport,
    GupbReport,
    certify_simplicial_face,
    check_general_position,
    check_gupb_complement,
    check_gupb_partition,
    classify_four_gp,
    five_subset_independence,
    product_states_independent,
    product_vectors_independent,
)
from .pptes import (
    BoundaryData,
    PptesReport,
    SixTuple,
    boundary_lambda,
    boundary_data,
    build_rho,
    expansion_coefficients,
    gamma_span_dims,
    lambda_bisection_check,
    verify_pptes,
)
from .registry import NamedExample, list_examples, load_example

__version__ = "0.1.0"
