"""
Hyperbolic core: floating-point isometries of the upper half-plane.
"""

from .classification import (
    IsometryKind,
    KindTag,
    approx_conjugate,
    classify,
    conjugate_stack,
    elliptic_order,
    fixed_point,
    kth_root,
    rotation_angle,
)
from .moebius import (
    MoebiusElement,
    act,
    canonicalize_stack,
    compose,
    displacement,
    hyperbolic_distance,
    power,
    rotation_about,
    rotation_about_i,
    stack,
    stack_distance,
    stack_inverse,
    translation,
)

__all__ = [
    "IsometryKind",
    "KindTag",
    "MoebiusElement",
    "act",
    "approx_conjugate",
    "canonicalize_stack",
    "classify",
    "compose",
    "conjugate_stack",
    "displacement",
    "elliptic_order",
    "fixed_point",
    "hyperbolic_distance",
    "kth_root",
    "power",
    "rotation_about",
    "rotation_about_i",
    "rotation_angle",
    "stack",
    "stack_distance",
    "stack_inverse",
    "translation",
]
