"""Exact slope-stability verification for polarized complex surfaces.

The package computes, in exact rational arithmetic, the intersection
numbers, slopes, Seshadri bounds, topological invariants, and
destabilization windows of two families of surfaces: self-products of
smooth curves of genus at least two, and cyclic branched covers of
curve products (Kodaira fibrations of positive signature).
"""

from .errors import (
    DegenerateInequality,
    DegeneratePolarization,
    DegenerateQuotientSlope,
    DivisionByZero,
    NotAmplePolarization,
    ParamError,
    SlopeStabError,
    SurfaceMismatch,
)
from .invariants import KodairaInvariants, invariants, k_squared_from_lattice
from .lattice import DivisorClass, SurfaceModel, linear_combination, pair, self_intersection
from .polysign import (
    OpenInterval,
    QuadraticSignProfile,
    quadratic_negativity,
    sign_of_quadratic_at,
)
from .positivity import (
    AmpleStatus,
    AmpleVerdict,
    ConeCell,
    ConeRay,
    SeshadriBound,
    ample_Lt,
    ample_cover_polarization,
    ample_in_plane,
    ample_ls,
    ample_ls_minus_diagonal,
    boundary_seshadri_diagonal,
    cone_section,
    seshadri_diagonal,
    seshadri_lower_bound_diagonal_cover,
    seshadri_lower_bound_residual,
)
from .rationals import DEFAULT_TOL, RationalInterval, as_fraction, format_rational, reduce
from .stability import (
    S_FAMILY,
    T_FAMILY,
    BoundaryMargin,
    SlopeReport,
    StabilityWindow,
    destabilizes,
    instability_window_c,
    instability_window_s,
    kodaira_polarization,
    kodaira_quotient_limit,
    kodaira_quotient_slope,
    kodaira_slope,
    kodaira_slope_limit,
    kodaira_window_c,
    product_destabilization_witness,
    product_quotient_closed,
    product_slope_closed,
    quotient_slope,
    residual_boundary_margin,
    slope,
    weinkove_alpha,
    weinkove_threshold,
)
from .surfaces import (
    BranchedCover,
    GeneralModuliSquare,
    KodairaParams,
    ProductSurfaceParams,
    UserBounds,
    cover_surface,
    graph_self_intersection,
    kodaira_surface,
    product_surface,
    pullback_from_cover,
    pullback_from_product,
)

__version__ = "0.1.0"

__all__ = [
    "AmpleStatus",
    "AmpleVerdict",
    "BoundaryMargin",
    "BranchedCover",
    "ConeCell",
    "ConeRay",
    "DEFAULT_TOL",
    "DegenerateInequality",
    "DegeneratePolarization",
    "DegenerateQuotientSlope",
    "DivisionByZero",
    "DivisorClass",
    "GeneralModuliSquare",
    "KodairaInvariants",
    "KodairaParams",
    "NotAmplePolarization",
    "OpenInterval",
    "ParamError",
    "ProductSurfaceParams",
    "QuadraticSignProfile",
    "RationalInterval",
    "S_FAMILY",
    "SeshadriBound",
    "SlopeReport",
    "SlopeStabError",
    "StabilityWindow",
    "SurfaceMismatch",
    "SurfaceModel",
    "T_FAMILY",
    "UserBounds",
    "ample_Lt",
    "ample_cover_polarization",
    "ample_in_plane",
    "ample_ls",
    "ample_ls_minus_diagonal",
    "as_fraction",
    "boundary_seshadri_diagonal",
    "cone_section",
    "cover_surface",
    "destabilizes",
    "format_rational",
    "graph_self_intersection",
    "instability_window_c",
    "instability_window_s",
    "invariants",
    "k_squared_from_lattice",
    "kodaira_polarization",
    "kodaira_quotient_limit",
    "kodaira_quotient_slope",
    "kodaira_slope",
    "kodaira_slope_limit",
    "kodaira_surface",
    "kodaira_window_c",
    "linear_combination",
    "pair",
    "product_destabilization_witness",
    "product_quotient_closed",
    "product_slope_closed",
    "product_surface",
    "pullback_from_cover",
    "pullback_from_product",
    "quadratic_negativity",
    "quotient_slope",
    "reduce",
    "residual_boundary_margin",
    "self_intersection",
    "seshadri_diagonal",
    "seshadri_lower_bound_diagonal_cover",
    "seshadri_lower_bound_residual",
    "sign_of_quadratic_at",
    "slope",
    "weinkove_alpha",
    "weinkove_threshold",
]
