"""
Adaptive quadrature helpers around ``scipy.integrate.quad``.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from scipy import integrate

from orbispec.config import setting
from orbispec.errors import QuadratureFailure


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and subdivision budget shared by every integral."""

    tol: float
    limit: int = 400
    # starting cutoff for integrals over [0, inf) evaluated by doubling
    r_start: float = 16.0
    max_doublings: int = 16

    @classmethod
    def default(cls, tol: float | None = None) -> QuadratureSpec:
        return cls(tol=setting("QUAD_TOL", tol), limit=setting("QUAD_LIMIT"))

    def accepts(self, value: float, error: float) -> bool:
        return error <= self.tol * max(1.0, abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float

    def __add__(self, other: QuadResult) -> QuadResult:
        return QuadResult(self.value + other.value, self.error + other.error)

    def scaled(self, factor: float) -> QuadResult:
        return QuadResult(factor * self.value, abs(factor) * self.error)


def integrate_interval(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    *,
    label: str = "integral",
    **kwargs: Any,
) -> QuadResult:
    """One call to quad with an error check.

    Extra keyword arguments (``weight``, ``wvar``, ``points``) are passed
    through to quad.
    """
    res = integrate.quad(
        f,
        a,
        b,
        epsabs=spec.tol * 1e-2,
        epsrel=spec.tol,
        limit=spec.limit,
        full_output=1,
        **kwargs,
    )
    value, error = float(res[0]), float(res[1])
    if not math.isfinite(value) or not spec.accepts(value, error):
        # quad appends its warning text when it gave up early
        warning = str(res[3]) if len(res) >= 4 else None
        raise QuadratureFailure(
            f"{label}: error estimate above tolerance",
            value=value,
            error=error,
            tol=spec.tol,
            warning=warning,
        )
    return QuadResult(value, error)


def integrate_half_line(
    f: Callable[[float], float],
    spec: QuadratureSpec,
    *,
    start: float = 0.0,
    label: str = "integral",
) -> QuadResult:
    """∫_start^∞ f by doubling the cutoff until the last slab is negligible."""
    cutoff = start + spec.r_start
    total = integrate_interval(f, start, cutoff, spec, label=label)
    for _ in range(spec.max_doublings):
        slab = integrate_interval(f, cutoff, 2 * cutoff, spec, label=label)
        total = total + slab
        cutoff *= 2
        if abs(slab.value) <= spec.tol * max(1.0, abs(total.value)):
            return total
    raise QuadratureFailure(
        f"{label}: integral did not stabilise",
        cutoff=cutoff,
        value=total.value,
        tol=spec.tol,
    )
