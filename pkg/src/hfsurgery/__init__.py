"""Surgery ranks for bifiltered knot Floer complexes over GF(2).

Given a finitely generated reduced bifiltered complex (with an optional
filtration-swapping flip involution), this package extracts the finite
hat-flavor regions, builds the truncated surgery mapping cone for any
positive slope p/q, computes its total homology rank by two independent
routes, evaluates the closed-form rank expression, and runs the rank
obstructions to cosmetic surgeries and to surgeries returning the
original manifold.
"""

from .cfk import (
    CfkComplex,
    DiffTerm,
    FilteredChainMap,
    FlipPair,
    FlipRequiredError,
    Generator,
    HatA,
    HatB,
    JLevel,
    Quadrant,
    RegionComplex,
    UndefinedRegionError,
    UnknownRegionError,
    ValidationIssue,
    ValidationReport,
)
from .f2 import (
    DimensionError,
    F2ChainComplex,
    F2Matrix,
    HomologyBasis,
    InvalidComplexError,
    NotAChainMapError,
    homology_dimensions,
    image_basis,
    image_intersection_basis,
    image_intersection_rank,
    induced_map_on_homology,
    kernel_basis,
    rank,
)
from .knots import (
    BUILTIN_NAMES,
    RandomSpec,
    StaircaseSpec,
    UnknownBuiltinError,
    builtin,
    mirror,
    random_complex,
    staircase,
    tensor,
)
from .obstructions import (
    CONSISTENT,
    NOT_APPLICABLE,
    OBSTRUCTED,
    HypothesisReport,
    ObstructionVerdict,
    complement_check,
    cosmetic_pair_check,
    detect_unknot,
    hypothesis_check,
    monotonicity_scan,
)
from .surgery import (
    FormulaNotApplicableError,
    InternalInvariantError,
    MappingCone,
    NotApplicableError,
    RankReport,
    Slope,
    SlopeError,
    TruncationError,
    build_cone,
    compute_rank_report,
    cone_rank_chain,
    cone_rank_homological,
    coprime_slopes,
    hypothesis_holds,
    kernel_basis_construction,
    kernel_rank,
    nu_surrogate,
    rank_formula,
    t_closed_form,
    t_invariant,
    truncation_bound,
)

__version__ = "0.1.0"
