"""
Classification of isometries and conjugacy helpers.

Hyperbolic elements carry their translation length ℓ = 2 arccosh(|tr|/2)
and norm N = e^ℓ. Elliptic elements carry θ = arccos(|tr|/2) in (0, π/2] with
the detected order. θ is half the rotation angle, so the rotation 2θ is
reported folded into (0, π]. The direction of rotation is not visible in the
trace and is recovered with :func:`rotation_angle`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np

from orbispec.config import setting
from orbispec.errors import InvalidInput, ParabolicInCocompact

from .moebius import (
    MoebiusElement,
    canonicalize_stack,
    stack,
    stack_distance,
    stack_inverse,
)

# Largest elliptic order recognised when reading an order off a rotation angle.
MAX_ELLIPTIC_ORDER = 1000


class KindTag(Enum):
    """Conjugacy type of an isometry."""

    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class IsometryKind:
    """Tagged classification result."""

    tag: KindTag
    angle: float | None = None
    order: int | None = None
    length: float | None = None

    @property
    def norm(self) -> float | None:
        return math.exp(self.length) if self.length is not None else None

    @property
    def is_hyperbolic(self) -> bool:
        return self.tag is KindTag.HYPERBOLIC

    @property
    def is_elliptic(self) -> bool:
        return self.tag is KindTag.ELLIPTIC

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.tag.value}
        if self.tag is KindTag.HYPERBOLIC:
            data.update(length=self.length, norm=self.norm)
        elif self.tag is KindTag.ELLIPTIC:
            data.update(angle=self.angle, order=self.order)
        return data


def elliptic_order(theta: float, tol: float = 1e-8) -> int | None:
    """Smallest m with m·θ/π an integer, or None for an irrational rotation."""
    ratio = theta / math.pi
    approx = Fraction(ratio).limit_denominator(MAX_ELLIPTIC_ORDER)
    if abs(float(approx) - ratio) > tol:
        return None
    return approx.denominator


def classify(
    g: MoebiusElement, *, cocompact: bool = False, eps_cls: float | None = None
) -> IsometryKind:
    """Classify g by the magnitude of its trace."""
    eps_cls = setting("EPS_CLS", eps_cls)
    abs_trace = abs(g.trace)
    if abs_trace > 2 + eps_cls:
        return IsometryKind(KindTag.HYPERBOLIC, length=2 * math.acosh(abs_trace / 2))
    if abs_trace < 2 - eps_cls:
        theta = math.acos(abs_trace / 2)
        return IsometryKind(KindTag.ELLIPTIC, angle=theta, order=elliptic_order(theta))
    if g.is_identity(max(eps_cls, 1e-9)):
        return IsometryKind(KindTag.IDENTITY)
    if cocompact:
        raise ParabolicInCocompact(
            "Parabolic element in a group asserted cocompact", trace=g.trace
        )
    return IsometryKind(KindTag.PARABOLIC)


def fixed_point(g: MoebiusElement) -> complex:
    """Fixed point in the upper half-plane of an elliptic element."""
    disc = g.trace**2 - 4
    if disc >= 0 or g.c == 0:
        raise InvalidInput("Only elliptic elements fix a point of the half-plane")
    root = math.sqrt(-disc)
    if g.c < 0:
        root = -root
    return complex(g.a - g.d, root) / (2 * g.c)


def rotation_angle(g: MoebiusElement) -> float:
    """Counterclockwise rotation angle in (0, 2π) at the fixed point.

    Read from g'(z0) = (c·z0 + d)^{-2} = e^{iφ}; this is independent of the
    sign chosen for the matrix.
    """
    z0 = fixed_point(g)
    derivative = 1 / (g.c * z0 + g.d) ** 2
    angle = cmath.phase(derivative) % (2 * math.pi)
    return angle


def kth_root(g: MoebiusElement, k: int) -> MoebiusElement:
    """The unique hyperbolic r with r^k = g, sharing g's axis.

    Uses g = U_{k-1}(s/2)·r − U_{k-2}(s/2)·I with s = tr r = 2cosh(ℓ/2k).
    """
    kind = classify(g)
    if not kind.is_hyperbolic or k < 1:
        raise InvalidInput("kth_root needs a hyperbolic element and k >= 1", k=k)
    if k == 1:
        return g
    assert kind.length is not None
    x = kind.length / (2 * k)
    shift = math.sinh((k - 1) * x)
    scale = math.sinh(k * x)
    weight = math.sinh(x)
    return MoebiusElement.of(
        (g.a * weight + shift) / scale,
        g.b * weight / scale,
        g.c * weight / scale,
        (g.d * weight + shift) / scale,
    )


def conjugate_stack(g: MoebiusElement, conjugators: np.ndarray) -> np.ndarray:
    """All w·g·w^{-1} for an (N, 2, 2) stack of conjugators, canonicalised."""
    matrix = g.to_array()
    products = conjugators @ matrix @ stack_inverse(conjugators)
    return canonicalize_stack(products)


def approx_conjugate(
    g: MoebiusElement,
    h: MoebiusElement,
    conjugators: list[MoebiusElement] | np.ndarray,
    tol: float | None = None,
) -> bool:
    """True iff w·g·w^{-1} ≈ h for some listed conjugator w."""
    tol = setting("EPS_CONJ", tol)
    if abs(abs(g.trace) - abs(h.trace)) > tol:
        return False
    if isinstance(conjugators, np.ndarray):
        array = conjugators
    else:
        if not conjugators:
            raise InvalidInput("Conjugator list must be nonempty")
        array = stack(list(conjugators))
    distances = stack_distance(conjugate_stack(g, array), h.to_array())
    return bool((distances <= tol).any())
