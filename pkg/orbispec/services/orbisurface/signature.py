"""
Orbifold signatures, Euler characteristic and Gauss-Bonnet area.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from orbispec.errors import Inconsistent, InvalidInput, NotHyperbolic
from orbispec.services.hyperbolic import MoebiusElement

# Distance to the nearest integer accepted when solving for the genus.
GENUS_TOL = 1e-6


@dataclass(frozen=True)
class OrbifoldSignature:
    """Genus of the underlying surface plus the multiset of cone orders."""

    genus: int
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInput("Genus must be nonnegative", genus=self.genus)
        if any(m < 2 for m in self.cone_orders):
            raise InvalidInput(
                "Cone orders must be at least 2", cone_orders=list(self.cone_orders)
            )
        object.__setattr__(self, "cone_orders", tuple(sorted(self.cone_orders)))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> OrbifoldSignature:
        try:
            genus = int(data["genus"])
            orders = tuple(int(m) for m in data.get("cone_orders", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"Malformed signature: {data!r}") from exc
        return cls(genus, orders)

    def to_dict(self) -> dict[str, Any]:
        return {"genus": self.genus, "cone_orders": list(self.cone_orders)}

    @property
    def chi(self) -> Fraction:
        return euler_characteristic(self)

    @property
    def is_hyperbolic(self) -> bool:
        return self.chi < 0

    @property
    def area(self) -> float:
        return area_gauss_bonnet(self)

    def cone_counts(self) -> dict[int, int]:
        """Number of cone points of each order."""
        return dict(sorted(Counter(self.cone_orders).items()))


@dataclass(frozen=True)
class HyperbolicStructure:
    """A signature with χ < 0, its curvature -1 area and optional generators."""

    signature: OrbifoldSignature
    area: float = field(init=False)
    generators: tuple[MoebiusElement, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "area", area_gauss_bonnet(self.signature))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> HyperbolicStructure:
        """Parse structure JSON: a signature plus optional ``generators``."""
        signature = OrbifoldSignature.from_dict(data)
        raw = data.get("generators")
        generators = (
            tuple(MoebiusElement.from_dict(m) for m in raw) if raw is not None else None
        )
        return cls(signature, generators)

    def to_dict(self) -> dict[str, Any]:
        data = self.signature.to_dict()
        data["area"] = self.area
        if self.generators is not None:
            data["generators"] = [g.to_dict() for g in self.generators]
        return data


def euler_characteristic(sig: OrbifoldSignature) -> Fraction:
    """χ(O) = (2 − 2g) − Σ (1 − 1/m_j), exact."""
    chi = Fraction(2 - 2 * sig.genus)
    for order in sig.cone_orders:
        chi -= 1 - Fraction(1, order)
    return chi


def area_gauss_bonnet(sig: OrbifoldSignature) -> float:
    """Area −2πχ(O) of the curvature −1 metric."""
    chi = euler_characteristic(sig)
    if chi >= 0:
        raise NotHyperbolic(
            "Signature admits no hyperbolic metric",
            chi=str(chi),
            signature=sig.to_dict(),
        )
    return -2 * math.pi * float(chi)


def genus_from(area: float, cone_orders: list[int] | tuple[int, ...]) -> int:
    """Solve area = −2π[(2 − 2g) − Σ(1 − 1/m_j)] for a nonnegative integer g."""
    if not area > 0:
        raise InvalidInput("Area must be positive", area=area)
    cone_sum = sum(Fraction(1) - Fraction(1, m) for m in cone_orders)
    genus = (2 - float(cone_sum) + area / (2 * math.pi)) / 2
    nearest = round(genus)
    if abs(genus - nearest) > GENUS_TOL or nearest < 0:
        raise Inconsistent(
            "Area and cone orders fit no integer genus",
            area=area,
            cone_orders=sorted(cone_orders),
            genus=genus,
        )
    return int(nearest)


def underlying_surface(sig: OrbifoldSignature) -> tuple[int, int]:
    """Genus and Euler characteristic of the underlying topological surface."""
    return sig.genus, 2 - 2 * sig.genus


def same_underlying_space(first: OrbifoldSignature, second: OrbifoldSignature) -> bool:
    """Closed orientable surfaces are homeomorphic iff their genera agree."""
    return underlying_surface(first) == underlying_surface(second)
