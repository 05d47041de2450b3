"""Gauss maps of projective hypersurfaces over finite fields."""

from .analysis import (
    AnalysisConfig,
    FiberReport,
    TheoremReport,
    VarietyReport,
    closed_form_fiber_quintic,
    cone_vertex_check,
    fiber,
    gauss_fibers,
    image_dimension_estimate,
    separability_verdict,
    strange_locus,
    verify_theorems,
)
from .enumeration import Budget, count_points, enumerate_points
from .errors import (
    BudgetExceededError,
    FieldError,
    FieldMismatchError,
    GaussForgeError,
    NotOnVarietyError,
    PolySyntaxError,
    SingularPointError,
)
from .gaussmap import gauss_differential, gauss_image, generic_rank, kappa, point_data, tangent_space
from .gf import GF, Scalar, create_field
from .linproj import LinearSubspace, ProjPoint, span
from .poly import MultiPoly, parse_poly

__all__ = [
    "AnalysisConfig",
    "Budget",
    "BudgetExceededError",
    "closed_form_fiber_quintic",
    "cone_vertex_check",
    "count_points",
    "create_field",
    "enumerate_points",
    "fiber",
    "FiberReport",
    "FieldError",
    "FieldMismatchError",
    "gauss_differential",
    "gauss_fibers",
    "gauss_image",
    "GaussForgeError",
    "generic_rank",
    "GF",
    "image_dimension_estimate",
    "kappa",
    "LinearSubspace",
    "MultiPoly",
    "NotOnVarietyError",
    "parse_poly",
    "point_data",
    "PolySyntaxError",
    "ProjPoint",
    "Scalar",
    "separability_verdict",
    "SingularPointError",
    "span",
    "strange_locus",
    "tangent_space",
    "TheoremReport",
    "VarietyReport",
    "verify_theorems",
]
