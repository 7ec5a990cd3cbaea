"""
Orbisurface model: signatures, Gauss-Bonnet and built-in Fuchsian groups.
"""

from .groups import (
    bolza_generators,
    bolza_structure,
    parse_preset,
    triangle_group_generators,
    triangle_structure,
    triangle_vertices,
)
from .signature import (
    HyperbolicStructure,
    OrbifoldSignature,
    area_gauss_bonnet,
    euler_characteristic,
    genus_from,
    same_underlying_space,
    underlying_surface,
)

__all__ = [
    "HyperbolicStructure",
    "OrbifoldSignature",
    "area_gauss_bonnet",
    "bolza_generators",
    "bolza_structure",
    "euler_characteristic",
    "genus_from",
    "parse_preset",
    "same_underlying_space",
    "triangle_group_generators",
    "triangle_structure",
    "triangle_vertices",
    "underlying_surface",
]
