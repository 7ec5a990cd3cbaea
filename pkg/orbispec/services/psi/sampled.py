"""
Uniformly sampled real functions of r or t.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from orbispec.errors import InvalidInput

UNIFORMITY_TOL = 1e-12
VARIABLES = ("r", "t")


def uniform_grid(start: float, stop: float, step: float) -> np.ndarray:
    """start, start + step, ... up to stop inclusive (within a tenth of a step)."""
    if not step > 0:
        raise InvalidInput("Grid step must be positive", step=step)
    if stop < start:
        raise InvalidInput("Grid stop must not precede start", start=start, stop=stop)
    count = int(np.floor((stop - start) / step + 0.1)) + 1
    return start + step * np.arange(count)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples of a real function on a uniform ascending grid."""

    grid: np.ndarray
    values: np.ndarray
    variable: str = "r"
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if self.variable not in VARIABLES:
            raise InvalidInput("Sample variable must be r or t", variable=self.variable)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise InvalidInput(
                "Grid and values must be one-dimensional and of equal length",
                grid=len(grid),
                values=len(values),
            )
        if len(grid) < 2:
            raise InvalidInput("A sampled function needs at least two samples")
        steps = np.diff(grid)
        step = (grid[-1] - grid[0]) / (len(grid) - 1)
        scale = max(1.0, float(np.abs(grid).max()))
        if step <= 0 or np.abs(steps - step).max() > UNIFORMITY_TOL * scale:
            raise InvalidInput("Grid must be uniform and ascending")
        if not np.isfinite(values).all():
            raise InvalidInput("Sample values must be finite")

    @classmethod
    def from_function(
        cls,
        f: Callable[[np.ndarray], Any],
        start: float,
        stop: float,
        step: float,
        variable: str = "r",
        **metadata: Any,
    ) -> SampledFunction:
        grid = uniform_grid(start, stop, step)
        return cls(grid, np.asarray(f(grid), dtype=float), variable, dict(metadata))

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def step(self) -> float:
        return float((self.grid[-1] - self.grid[0]) / (len(self.grid) - 1))

    @property
    def start(self) -> float:
        return float(self.grid[0])

    @property
    def stop(self) -> float:
        return float(self.grid[-1])

    def with_values(self, values: np.ndarray, **metadata: Any) -> SampledFunction:
        return SampledFunction(
            self.grid, values, self.variable, {**self.metadata, **metadata}
        )

    def __add__(self, other: SampledFunction) -> SampledFunction:
        self._check_compatible(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: SampledFunction) -> SampledFunction:
        self._check_compatible(other)
        return self.with_values(self.values - other.values)

    def scaled(self, factor: float) -> SampledFunction:
        return self.with_values(factor * self.values)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def _check_compatible(self, other: SampledFunction) -> None:
        if (
            self.variable != other.variable
            or len(self) != len(other)
            or not np.allclose(self.grid, other.grid, rtol=0, atol=UNIFORMITY_TOL)
        ):
            raise InvalidInput("Sampled functions live on different grids")
