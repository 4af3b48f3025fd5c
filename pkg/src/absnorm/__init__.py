"""Absolute normalized norms on R^2.

Exact polygonal norms, their classification into the classes F_{m,n},
Daugavet-denial margins and certificates, and explicit Daugavet centers on
discretized L1 sums.
"""
from .errors import (
    AbsNormError,
    ContractError,
    MalformedInputError,
    UnsupportedRepresentationError,
    ValidationError,
)
from .norm_core import (
    L1,
    LINF,
    BlackBoxNorm,
    Functional2,
    PolygonalNorm,
    SliceRegion,
    ValidationReport,
    Vec2,
    approximate_polygon,
    dual_norm,
    extreme_points,
    lp_norm,
    norm_eval,
    polygon,
    polygon_from_points,
    slice_positive,
    validate_norm,
)
from .classify import (
    admissibility,
    classify_norm,
    duality_swap_check,
    edge_count,
    hat_values,
    membership,
    verdict,
)
from .denial import (
    DenialCertificate,
    Region,
    adjoint_symmetry_check,
    char_equiv_check,
    deny_margin,
    rank1_norm,
    segment_witness,
    set_denial_certificate,
    star_deny_margin,
    three_edge_exceptional,
    u_function,
)
from .centers import (
    CenterSpec,
    DefectReport,
    LinearMap,
    ModelSpace,
    RankOneOp,
    StepRankOne,
    SumSpace,
    center_from_sum,
    center_from_sum_classical,
    center_into_sum,
    center_into_sum_classical,
    convergence_study,
    daugavet_defect,
    make_discrete_l1,
    op_norm,
    rank_one,
    slice_criterion_witness,
)
from .spec_io import dump_norm, load_norm

__version__ = "0.1.0"
