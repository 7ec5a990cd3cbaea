"""
Geometric data of the wave trace: identity mass, delta train and cone orders.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from orbispec.errors import InvalidInput
from orbispec.services.geodesics import LengthSpectrum

# Positions closer than this are one singularity.
POSITION_MERGE_TOL = 1e-12


def iterate_coefficient(length: float, k: int) -> float:
    """Weight ℓ/(4 sinh(kℓ/2)) of the k-th iterate of a primitive geodesic."""
    return length / (4 * math.sinh(k * length / 2))


@dataclass(frozen=True)
class WaveTraceModel:
    """Inputs of the wave trace: area, delta positions with weights, cone orders."""

    area: float
    singular_part: tuple[tuple[float, float], ...] = ()
    smooth_orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.area < 0:
            raise InvalidInput("Area must be nonnegative", area=self.area)
        previous = 0.0
        for position, coefficient in self.singular_part:
            if not position > previous:
                raise InvalidInput(
                    "Singular positions must be positive and ascending", position=position
                )
            if not coefficient > 0:
                raise InvalidInput("Singular coefficients must be positive", position=position)
            previous = position
        for m in self.smooth_orders:
            if m < 2:
                raise InvalidInput("Cone orders must be at least 2", order=m)
        object.__setattr__(self, "smooth_orders", tuple(sorted(self.smooth_orders)))

    @property
    def positions(self) -> list[float]:
        return [p for p, _ in self.singular_part]

    def to_dict(self) -> dict[str, Any]:
        return {
            "area": self.area,
            "singular_part": [
                {"position": p, "coefficient": c} for p, c in self.singular_part
            ],
            "smooth_orders": list(self.smooth_orders),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> WaveTraceModel:
        try:
            singular = tuple(
                (float(item["position"]), float(item["coefficient"]))
                for item in data.get("singular_part", [])
            )
            return cls(
                area=float(data["area"]),
                singular_part=singular,
                smooth_orders=tuple(int(m) for m in data.get("smooth_orders", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"Malformed wave trace model: {exc}") from exc


def merge_singularities(
    items: Iterable[tuple[float, float]],
) -> tuple[tuple[float, float], ...]:
    """Sort (position, coefficient) pairs and add coefficients of coincident positions."""
    merged: list[list[float]] = []
    for position, coefficient in sorted(items):
        if merged and position - merged[-1][0] <= POSITION_MERGE_TOL * max(1.0, position):
            merged[-1][1] += coefficient
        else:
            merged.append([position, coefficient])
    return tuple((p, c) for p, c in merged)


def model_from_spectrum(
    area: float,
    spectrum: LengthSpectrum,
    cone_orders: Iterable[int] = (),
    max_length: float | None = None,
) -> WaveTraceModel:
    """Delta train of every iterate kℓ <= max_length with weight mult·ℓ/(4 sinh(kℓ/2))."""
    if max_length is None:
        max_length = spectrum.max_length if spectrum.max_length is not None else 0.0
    items = [
        (position, entry.multiplicity * iterate_coefficient(entry.length, k))
        for k, position, entry in spectrum.iterates(max_length)
    ]
    return WaveTraceModel(
        area=area,
        singular_part=merge_singularities(items),
        smooth_orders=tuple(cone_orders),
    )


def suggest_sigma(model: WaveTraceModel) -> float:
    """A sixth of the smallest gap between distinct singularities, t = 0 included."""
    positions = [0.0, *model.positions]
    if len(positions) < 2:
        raise InvalidInput("A model without geodesics has no natural mollifier width")
    gap = min(b - a for a, b in zip(positions, positions[1:], strict=False))
    return gap / 6
