"""
Built-in Fuchsian groups.

Triangle groups are laid out by hyperbolic trigonometry: vertex A at i,
vertex B straight above it, vertex C reached from A by turning the ray AB
counterclockwise through the angle at A. With the triangle oriented
counterclockwise, the rotations by twice the vertex angles satisfy
R1·R2·R3 = identity.
"""

from __future__ import annotations

import math
from fractions import Fraction

from orbispec.errors import InvalidInput, NotHyperbolic
from orbispec.services.hyperbolic import (
    MoebiusElement,
    act,
    compose,
    rotation_about,
    rotation_about_i,
    translation,
)

from .signature import HyperbolicStructure, OrbifoldSignature


def triangle_vertices(p: int, q: int, r: int) -> tuple[complex, complex, complex]:
    """Vertices of the triangle with angles π/p, π/q, π/r."""
    for order in (p, q, r):
        if order < 2:
            raise InvalidInput("Triangle orders must be at least 2", orders=[p, q, r])
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        raise NotHyperbolic(
            "Angle sum is at least π, no hyperbolic triangle", orders=[p, q, r]
        )
    alpha, beta, gamma = math.pi / p, math.pi / q, math.pi / r
    # law of cosines for angles: side AB is opposite C, side AC opposite B
    cosh_ab = (math.cos(alpha) * math.cos(beta) + math.cos(gamma)) / (
        math.sin(alpha) * math.sin(beta)
    )
    cosh_ac = (math.cos(alpha) * math.cos(gamma) + math.cos(beta)) / (
        math.sin(alpha) * math.sin(gamma)
    )
    vertex_a = 1j
    vertex_b = 1j * math.exp(math.acosh(cosh_ab))
    vertex_c = act(rotation_about_i(alpha), 1j * math.exp(math.acosh(cosh_ac)))
    return vertex_a, vertex_b, vertex_c


def triangle_group_generators(
    p: int, q: int, r: int
) -> tuple[MoebiusElement, MoebiusElement, MoebiusElement]:
    """Rotations by 2π/p, 2π/q, 2π/r about the triangle's vertices."""
    vertex_a, vertex_b, vertex_c = triangle_vertices(p, q, r)
    return (
        rotation_about(vertex_a, 2 * math.pi / p),
        rotation_about(vertex_b, 2 * math.pi / q),
        rotation_about(vertex_c, 2 * math.pi / r),
    )


def triangle_structure(p: int, q: int, r: int) -> HyperbolicStructure:
    return HyperbolicStructure(
        OrbifoldSignature(0, (p, q, r)), triangle_group_generators(p, q, r)
    )


def bolza_generators() -> tuple[MoebiusElement, ...]:
    """Side pairings of the regular octagon with interior angles π/4.

    Opposite sides are paired by translations along the four axes through
    the centre i; each translates by twice the inradius, cosh(ℓ/2) = 1 + √2.
    """
    length = 2 * math.acosh(1 + math.sqrt(2))
    shift = translation(length)
    generators = []
    for k in range(4):
        turn = rotation_about_i(k * math.pi / 4)
        generators.append(compose(compose(turn, shift), turn.inverse()))
    return tuple(generators)


def bolza_structure() -> HyperbolicStructure:
    return HyperbolicStructure(OrbifoldSignature(2, ()), bolza_generators())


def parse_preset(preset: str) -> tuple[int, int, int]:
    """Parse a ``p,q,r`` triangle preset."""
    try:
        orders = tuple(int(part) for part in preset.split(","))
    except ValueError as exc:
        raise InvalidInput(f"Preset must look like p,q,r: {preset!r}") from exc
    if len(orders) != 3:
        raise InvalidInput(f"Preset must list three orders: {preset!r}")
    return orders  # type: ignore[return-value]
