"""Exact computation with traces of curves on closed orientable surfaces."""

from .errors import (
    BadIndex,
    BadLetter,
    CurvetraceError,
    ExpansionBudgetExceeded,
    GenusTooSmall,
    ModelInconsistency,
    NotSimple,
    NotSimpleImage,
    ReductionBudgetExceeded,
    SolveFailed,
    TrivialClass,
)
from .words import (
    CurveClass,
    HomologyVector,
    Surface,
    canonical_class,
    format_word,
    homology_class,
    is_primitive,
    make_surface,
    normalize_word,
    parse_word,
    primitive_root,
)
from .representations import (
    Representation,
    evaluate_trace,
    random_representation,
    trivial_representation,
)
from .diagrams import Budget, CurveDiagram
from .complement import ComplementReport
from .curves import (
    complement_report,
    enumerate_classes,
    enumerate_simple_classes,
    intersection_number,
    is_simple,
    realize,
    self_intersection,
    tauten,
)
from .algebra import (
    Multicurve,
    RankReport,
    TraceExpression,
    basis_expression,
    basis_rank_check,
    empty_multicurve,
    enumerate_multicurves,
    evaluate_expression,
    expand_trace,
    format_expression,
    format_multicurve,
    make_multicurve,
    multiply_expressions,
    parse_expression,
    parse_multicurve,
    scalar_expression,
    unit_expression,
    zero_expression,
)
from .mapping import (
    AutomorphismReport,
    MappingClass,
    RelatorCertificate,
    SemidirectReport,
    SignCharacter,
    apply_to_class,
    apply_to_expression,
    apply_to_multicurve,
    apply_to_word,
    central_twist,
    character_pullback,
    compose_mapping_classes,
    format_mapping_class,
    format_sign_character,
    h1_action,
    humphries_classes,
    identity_mapping_class,
    invert_mapping_class,
    make_sign_character,
    parse_mapping_class,
    parse_sign_character,
    relator_certificate,
    semidirect_check,
    sign_pairing,
    twist_along,
    twist_generator,
    verify_algebra_automorphism,
)
from .valuations import (
    Lamination,
    ValuationValue,
    check_positive_up_to,
    check_strict_up_to,
    classify_discrete,
    curv_normalize,
    format_lamination,
    lamination_intersection,
    make_lamination,
    multicurve_intersection,
    multiplicativity_check,
    parse_lamination,
    scale_lamination,
    thurston_max_check,
    valuate,
)

__all__ = [
    "AutomorphismReport",
    "BadIndex",
    "BadLetter",
    "Budget",
    "ComplementReport",
    "CurvetraceError",
    "CurveClass",
    "CurveDiagram",
    "ExpansionBudgetExceeded",
    "GenusTooSmall",
    "HomologyVector",
    "Lamination",
    "MappingClass",
    "ModelInconsistency",
    "Multicurve",
    "NotSimple",
    "NotSimpleImage",
    "RankReport",
    "ReductionBudgetExceeded",
    "RelatorCertificate",
    "Representation",
    "SemidirectReport",
    "SignCharacter",
    "SolveFailed",
    "Surface",
    "TraceExpression",
    "TrivialClass",
    "ValuationValue",
    "apply_to_class",
    "apply_to_expression",
    "apply_to_multicurve",
    "apply_to_word",
    "basis_expression",
    "basis_rank_check",
    "canonical_class",
    "central_twist",
    "character_pullback",
    "check_positive_up_to",
    "check_strict_up_to",
    "classify_discrete",
    "complement_report",
    "compose_mapping_classes",
    "curv_normalize",
    "empty_multicurve",
    "enumerate_classes",
    "enumerate_multicurves",
    "enumerate_simple_classes",
    "evaluate_expression",
    "evaluate_trace",
    "expand_trace",
    "format_expression",
    "format_lamination",
    "format_mapping_class",
    "format_multicurve",
    "format_sign_character",
    "format_word",
    "h1_action",
    "homology_class",
    "humphries_classes",
    "identity_mapping_class",
    "intersection_number",
    "invert_mapping_class",
    "is_primitive",
    "is_simple",
    "lamination_intersection",
    "make_lamination",
    "make_multicurve",
    "make_sign_character",
    "make_surface",
    "multicurve_intersection",
    "multiplicativity_check",
    "multiply_expressions",
    "normalize_word",
    "parse_expression",
    "parse_lamination",
    "parse_mapping_class",
    "parse_multicurve",
    "parse_sign_character",
    "parse_word",
    "primitive_root",
    "random_representation",
    "realize",
    "relator_certificate",
    "scalar_expression",
    "scale_lamination",
    "self_intersection",
    "semidirect_check",
    "sign_pairing",
    "tauten",
    "thurston_max_check",
    "trivial_representation",
    "twist_along",
    "twist_generator",
    "unit_expression",
    "valuate",
    "verify_algebra_automorphism",
    "zero_expression",
]

__version__ = "0.1.0"
