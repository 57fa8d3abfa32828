"""Exact + Monte Carlo convex geometry toolkit for higher-order difference bodies."""

from .errors import (
    BallUnsupported,
    BudgetExceeded,
    ConfigInvalid,
    DegenerateInput,
    DimensionMismatch,
    EmptyInput,
    GeometryError,
    IllConditioned,
    InvalidQ,
    MixedVariantsUnsupported,
    NonIntegrable,
    NotEven,
    NotOriginSymmetric,
    OriginNotInterior,
    ParseError,
    Unbounded,
)
from .polytope import (
    HPolytope,
    VPolytope,
    centroid_exact,
    convex_hull,
    cube,
    cross_polytope,
    facet_enum,
    linear_image,
    minkowski_sum,
    segment_polytope,
    simplex,
    vertex_enum,
    volume_exact,
)
from .lp import LPResult, lp_feasible, lp_solve

__version__ = "0.1.0"
