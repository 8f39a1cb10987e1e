"""Geometry kernel for polyhedral hedgehogs (herissons).

Validate sphere-partition equipments, reconstruct surfaces from support
numbers, compute oriented face areas, decide congruence by sign counting,
form Minkowski sums, and solve the hedgehog Minkowski problem by homotopy
continuation.
"""

from . import builders
from .congruence import (
    CauchyStatus,
    CauchyVerdict,
    CongruenceStatus,
    CongruenceVerdict,
    PolygonLabeling,
    can_translate_inside,
    cauchy_verdict,
    congruent_and_parallel,
    edge_labeling,
    face_polygon_2d,
    label_parallel_faces,
    sign_changes,
)
from .errors import (
    DegenerateEquipment,
    DegenerateFace,
    FanMismatch,
    HerissonError,
    InconsistentVertex,
    MalformedFan,
    NotComparable,
    NotSameClass,
    ProbeFailed,
    SingularVertex,
)
from .fan import (
    DualComplex,
    Fan,
    ValidationReport,
    dual_complex,
    is_general_position,
    validate,
)
from .geometry import (
    Herisson,
    balance_residual,
    face_frame,
    gauge_fix,
    minkowski_sum,
    perimeter_bound,
    reconstruct,
    support_scale,
)
from .solver import (
    SolveOptions,
    SolveOutcome,
    SolveStatus,
    TraceRecord,
    area_map,
    jacobian,
    solve_minkowski,
    validate_target,
)

__all__ = [
    "builders",
    "CauchyStatus",
    "CauchyVerdict",
    "CongruenceStatus",
    "CongruenceVerdict",
    "PolygonLabeling",
    "can_translate_inside",
    "cauchy_verdict",
    "congruent_and_parallel",
    "edge_labeling",
    "face_polygon_2d",
    "label_parallel_faces",
    "sign_changes",
    "DegenerateEquipment",
    "DegenerateFace",
    "FanMismatch",
    "HerissonError",
    "InconsistentVertex",
    "MalformedFan",
    "NotComparable",
    "NotSameClass",
    "ProbeFailed",
    "SingularVertex",
    "DualComplex",
    "Fan",
    "ValidationReport",
    "dual_complex",
    "is_general_position",
    "validate",
    "Herisson",
    "balance_residual",
    "face_frame",
    "gauge_fix",
    "minkowski_sum",
    "perimeter_bound",
    "reconstruct",
    "support_scale",
    "SolveOptions",
    "SolveOutcome",
    "SolveStatus",
    "TraceRecord",
    "area_map",
    "jacobian",
    "solve_minkowski",
    "validate_target",
]
