"""Finite projective spaces PG(n, q), their Grassmann line-spaces, and
mechanical verification of the line-map isomorphism theorems."""

from .errors import (
    BadConfiguration,
    BudgetExceeded,
    DimensionTooSmall,
    EqualLines,
    EqualPoints,
    FormatError,
    GeometryError,
    IncompatibleSpaces,
    NotAPlane,
    NotInStar,
    NotLineConsistent,
    PointNotInPlane,
    PreconditionViolated,
    RepeatedPoints,
    TooLarge,
    UnsupportedDimension,
    UnsupportedOrder,
)
from .field import (
    SUPPORTED_ORDERS,
    FieldSpec,
    FieldTable,
    field_make,
    monomorphisms_all_surjective,
)
from .grassmann import (
    AutomorphismReport,
    GrassmannSpace,
    automorphism_group,
    build_grassmann,
    export_graph,
    parse_graph,
    related,
    skew,
)
from .maps import (
    Collineation,
    Duality,
    KappaReport,
    KappaStatus,
    LineMap,
    MapKind,
    PointMap,
    PropertyFlags,
    check_properties,
    classify_point_map,
    collineation_point_map,
    duality_line_map,
    duality_point_to_plane,
    induced_line_map,
    intersection_compatibility_check,
    noncollinear_witness,
    pencil_image_is_pencil,
    preserves_intersections,
    preserves_skewness,
    reconstruct_point_map,
    restrict_to_star,
)
from .projspace import (
    AxiomReport,
    IncidenceStructure,
    Line,
    Point,
    ProjSpace,
    Subspace,
    build_space,
    collinear,
    dual_space,
    gaussian_binomial,
    incidence_dual,
    incidence_isomorphic,
    join,
    meet,
    native_structure,
    pencil,
    plane_points,
    plane_quotient,
    planes,
    planes_of_line,
    planes_through_point,
    quotient,
    span_subspace,
    star,
    structure_planes,
    subspace_points,
    verify_projective_axioms,
)
from .rng import SplitMix64
from .theorems import (
    ClauseVerdict,
    InstanceGenerator,
    InstanceKind,
    ShadowReport,
    TheoremReport,
    chow_crosscheck,
    generate_instance,
    one_way_shadow,
    pgammal_order,
    pgl_order,
    sample_collineation,
    sample_duality,
    theorem2_predicates,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3_preconditions,
)

__version__ = "0.1.0"
