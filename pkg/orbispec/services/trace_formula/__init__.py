"""
Selberg trace formula: test-function pairs, geometric terms, spectral side.
"""

from .pairs import (
    CONVENTION,
    PAIRS,
    TestFunctionPair,
    bspline_pair,
    check_admissible,
    gaussian_heat_pair,
    make_pair,
    register_pair,
    sech_pair,
    transform_of_g,
)
from .quadrature import QuadratureSpec, QuadResult, integrate_half_line, integrate_interval
from .terms import (
    GeometricReport,
    HyperbolicTerm,
    SpectralParameters,
    elliptic_point_term,
    elliptic_term,
    geometric_side,
    heat_trace_area,
    hyperbolic_term,
    identity_term,
    spectral_side,
)

__all__ = [
    "CONVENTION",
    "PAIRS",
    "GeometricReport",
    "HyperbolicTerm",
    "QuadResult",
    "QuadratureSpec",
    "SpectralParameters",
    "TestFunctionPair",
    "bspline_pair",
    "check_admissible",
    "elliptic_point_term",
    "elliptic_term",
    "gaussian_heat_pair",
    "geometric_side",
    "heat_trace_area",
    "hyperbolic_term",
    "identity_term",
    "integrate_half_line",
    "integrate_interval",
    "make_pair",
    "register_pair",
    "sech_pair",
    "spectral_side",
    "transform_of_g",
]
