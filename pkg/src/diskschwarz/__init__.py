"""Schwarzian-derivative analysis of analytic and harmonic maps of the disk.

Core surface: jets (exact third-order derivatives), an expression language
for maps, hyperbolic disk geometry, Schwarzian operators and norm estimates,
Nehari weights with the comparison ODE, univalence/valence criteria, and
Weierstrass-Enneper lifts with mesh export. A FastAPI service and a CLI wrap
the same operation handlers.
"""

__version__ = "0.1.0"

from .errors import (
    ContourNearRootError,
    DomainError,
    InputError,
    LocalUnivalenceError,
    NumericError,
    ParseError,
    QuadratureError,
    ToolkitError,
)
from .expr import AnalyticMap, analytic_map, parse, format_expr
from .jet import Jet3
from .hyperbolic import DiskAutomorphism, automorphism_through, hyp_distance
from .nehari import NehariFunction, make_weight
from .schwarzian import (
    HarmonicMap,
    NormEstimate,
    norm_estimate,
    schwarzian_analytic,
    schwarzian_harmonic,
)
from .criteria import CriterionVerdict, ValenceCount, check_bound, count_valence
from .surface import LiftSample, SurfaceMesh, build_mesh, lift, shear

__all__ = [
    "__version__",
    "AnalyticMap",
    "ContourNearRootError",
    "CriterionVerdict",
    "DiskAutomorphism",
    "DomainError",
    "HarmonicMap",
    "InputError",
    "Jet3",
    "LiftSample",
    "LocalUnivalenceError",
    "NehariFunction",
    "NormEstimate",
    "NumericError",
    "ParseError",
    "QuadratureError",
    "SurfaceMesh",
    "ToolkitError",
    "ValenceCount",
    "analytic_map",
    "automorphism_through",
    "build_mesh",
    "check_bound",
    "count_valence",
    "format_expr",
    "hyp_distance",
    "lift",
    "make_weight",
    "norm_estimate",
    "parse",
    "schwarzian_analytic",
    "schwarzian_harmonic",
    "shear",
]
