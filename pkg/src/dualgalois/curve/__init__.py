"""Plane curves, their singularities and flexes, and their duals."""
from .corpus import parse_corpus, read_corpus
from .dual import DualCurveResult, compute_dual, divides_exactly, dual_curve, sample_curve_points
from .intersect import IntersectionError, frame_with_first_column, intersect
from .plane import (
    CUSP,
    NODE,
    ORDINARY,
    UNCLASSIFIED,
    NotOnCurveError,
    PlaneCurve,
    ReducibleCurveError,
    SingularPoint,
    SingularPointError,
    dual_point,
    flexes,
    intersection_multiplicity,
    local_forms,
    multiplicity_at,
    singular_locus,
    tangent_line,
)
from .points import POINT_TOL, ProjectivePoint
from .profile import LineIntersection, LineProfile, line_basis, line_profile

__all__ = [
    "parse_corpus", "read_corpus",
    "DualCurveResult", "compute_dual", "divides_exactly", "dual_curve", "sample_curve_points",
    "IntersectionError", "frame_with_first_column", "intersect",
    "CUSP", "NODE", "ORDINARY", "UNCLASSIFIED",
    "NotOnCurveError", "PlaneCurve", "ReducibleCurveError", "SingularPoint", "SingularPointError",
    "dual_point", "flexes", "intersection_multiplicity", "local_forms", "multiplicity_at",
    "singular_locus", "tangent_line",
    "POINT_TOL", "ProjectivePoint",
    "LineIntersection", "LineProfile", "line_basis", "line_profile",
]
