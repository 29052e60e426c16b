"""Exact Einstein-metric obstruction calculator for 4-manifold connected sums."""

from .blocks import (
    CP2,
    K3,
    S4,
    Block,
    ChenSurface,
    CP2Bar,
    Custom,
    Invariants,
    ManifoldExpr,
    ParityViolationError,
    S1xS3,
    block_invariants,
    connected_sum_invariants,
    is_admissible,
    mkl_decomposition,
    mkl_expression,
    mkl_invariants,
)
from .enclosures import Enclosure, cbrt_sq, pi_squared
from .geography import (
    ChenParams,
    ChenRegion,
    Region,
    RegionDecision,
    RegionValue,
    TableRegion,
    bounds,
    emit_geography,
    first_open_x,
    in_region,
    min_feasible_x,
    y_window,
)
from .obstructions import (
    Certificate,
    HypothesisUnmetError,
    Rule,
    Verdict,
    VerdictStatus,
    evaluate_all,
    gromov,
    hitchin_thorpe,
    lebrun,
    lebrun_generalized,
)
from .parser import (
    ParseError,
    UnknownBlockError,
    ZeroMultiplicityError,
    format_expr,
    parse_expr,
)
from .spinc import (
    CanonicalMismatchError,
    NonIntegralDimensionError,
    SpinCDescriptor,
    SWStatus,
    blow_up,
    c1plus_sq_lower_bound,
    canonical_spinc_of_kahler,
    formal_dimension,
    s1s3_sum,
)
from .witness import (
    NotAdmissibleError,
    SearchExhaustedError,
    Witness,
    check_witness,
    feasible_l_start,
    solve,
    verify,
)

__version__ = "0.1.0"
