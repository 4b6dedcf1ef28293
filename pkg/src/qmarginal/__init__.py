"""qmarginal: does a chosen set of reduced density matrices determine a
multi-party pure quantum state uniquely among all states, pure or mixed?

The package provides a constructive linear test for tripartite groupings,
an independent convex-feasibility oracle for arbitrary marginal sets,
exact parameter-counting bounds on the sufficient fraction of parties,
a classical counterexample generator, and a reproducible CLI.
"""

from .bounds import (
    AlphaSolution,
    BoundsRow,
    alpha_upper_table,
    binary_entropy,
    bounds_rows,
    count_reduced_params,
    finite_n_lower_fraction,
    geometric_bound,
    pure_param_count,
    solve_alpha_lower,
)
from .classical import (
    EpsilonTooLargeError,
    JointDistribution,
    alternating_deviation,
    classical_marginal,
    counterexample_pair,
)
from .feasibility import (
    INCONCLUSIVE,
    NON_UNIQUE,
    UNIQUE,
    ConstraintOperator,
    DykstraResult,
    FeasibilityVerdict,
    MarginalConstraintSet,
    ProjectionConfig,
    SurveyStats,
    constraint_nullspace,
    dykstra_solve,
    genericity_survey,
    project_affine,
    project_psd,
    uniqueness_probe,
)
from .tensor import (
    AmplitudeTensor,
    BlochTable,
    DensityMatrix,
    PartySignature,
    SeededRng,
    bloch_decompose,
    bloch_reconstruct,
    coarse_grain,
    gell_mann_basis,
    haar_random_state,
    hermitian_eigen,
    partial_trace,
    partial_trace_matrix,
    rank_and_nullspace,
    to_density,
    trace_distance,
)
from .uniqueness import (
    DEGENERATE,
    UNIQUE_LINEAR,
    ConsistencyMatrix,
    EliminationReport,
    PartySplit,
    RankDeficientBlockError,
    TripartiteShape,
    UniquenessVerdict,
    build_consistency_matrix,
    check_linear_uniqueness,
    identity_pattern_vector,
    party_split,
    sequential_elimination_trace,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
