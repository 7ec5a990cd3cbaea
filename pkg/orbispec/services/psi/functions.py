"""
The elliptic profile functions ψ_m and their Fourier transforms Ψ_m.

    ψ_m(r) = Σ_{l=1}^{m-1} (4m sin(πl/m))^{-1}
             · ( e^{-2πrl/m}/(1+e^{-2πr}) + e^{2πrl/m}/(1+e^{2πr}) )

ψ_m is even; it is evaluated at |r| with the second fraction rewritten as
e^{-2π|r|(1-l/m)}/(1+e^{-2π|r|}) so nothing overflows.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
from cachetools import LRUCache, cached

from orbispec.errors import InvalidInput
from orbispec.services.trace_formula import (
    QuadratureSpec,
    integrate_half_line,
    integrate_interval,
)


def _check_order(m: int) -> None:
    if int(m) != m or m < 2:
        raise InvalidInput("ψ_m needs an integer order m >= 2", order=m)


def psi_value(m: int, r: Any) -> Any:
    """ψ_m at r (scalar or array)."""
    _check_order(m)
    a = np.abs(np.asarray(r, dtype=float))
    damping = 1.0 / (1.0 + np.exp(-2 * math.pi * a))
    total = np.zeros_like(a)
    for exponent in range(1, m):
        ratio = exponent / m
        weight = 1.0 / (4 * m * math.sin(math.pi * ratio))
        total = total + weight * damping * (
            np.exp(-2 * math.pi * a * ratio) + np.exp(-2 * math.pi * a * (1 - ratio))
        )
    if np.ndim(total) == 0:
        return float(total)
    return total


def psi_asymptotic(m: int, r: Any) -> Any:
    """Leading behaviour (2m sin(π/m))^{-1} e^{-2πr/m} for large r."""
    _check_order(m)
    value = np.exp(-2 * math.pi * np.asarray(r, dtype=float) / m) / (
        2 * m * math.sin(math.pi / m)
    )
    if np.ndim(value) == 0:
        return float(value)
    return value


@cached(cache=LRUCache(maxsize=65536))
def _psi_time_cached(m: int, t: float, tol: float, limit: int) -> float:
    quad = QuadratureSpec(tol=tol, limit=limit)

    def integrand(r: float) -> float:
        return psi_value(m, r)

    if t == 0:
        result = integrate_half_line(integrand, quad, label=f"Ψ_{m}(0)")
    else:
        result = integrate_interval(
            integrand, 0.0, math.inf, quad, weight="cos", wvar=t, label=f"Ψ_{m}({t})"
        )
    return 2 * result.value


def Psi_time(m: int, t: float, quad: QuadratureSpec | None = None) -> float:
    """Ψ_m(t) = ∫ ψ_m(r) e^{irt} dr = 2∫₀^∞ ψ_m(r) cos(rt) dr."""
    _check_order(m)
    quad = quad or QuadratureSpec.default()
    return _psi_time_cached(int(m), abs(float(t)), quad.tol, quad.limit)


def Psi_time_grid(m: int, ts: Any, quad: QuadratureSpec | None = None) -> np.ndarray:
    """Ψ_m on an array of times."""
    return np.array([Psi_time(m, t, quad) for t in np.ravel(ts)]).reshape(np.shape(ts))


def psi_integral(m: int) -> float:
    """∫ ψ_m(r) dr over the real line, which equals (m² - 1)/(12m).

    Each fraction integrates to 1/(2 sin(πl/m)) and Σ_l sin^{-2}(πl/m) is
    (m² - 1)/3.
    """
    _check_order(m)
    return (m * m - 1) / (12 * m)
