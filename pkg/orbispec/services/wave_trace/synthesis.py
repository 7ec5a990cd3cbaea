"""
Gaussian-mollified wave trace.

The trace Σ cos(r_n t) is a distribution in t. Convolving with the unit-mass
Gaussian ρ_σ makes it a smooth function made of three parts:

* identity: the principal-value term at t = 0, scaled by the area;
* singular: mollified deltas at ±kℓ with weights ℓ/(4 sinh(kℓ/2));
* smooth: Σ over cone points of Ψ_m mollified.

Slowly varying pieces (the smooth part and the regular remainder of the
identity part) are evaluated by quadrature on a coarse grid and carried to
the sample grid by cubic splines.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import structlog
from cachetools import LRUCache, cached
from scipy.interpolate import CubicSpline
from scipy.special import dawsn

from orbispec.config import setting
from orbispec.errors import GridTooCoarse, InvalidInput
from orbispec.services.psi import SampledFunction, psi_value, uniform_grid
from orbispec.services.trace_formula import QuadratureSpec, integrate_interval

from .model import WaveTraceModel

logger = structlog.get_logger(__name__)

PARTS = ("identity", "singular", "smooth")
IDENTITY_METHODS = ("spectral", "pv")
COARSE_STEP = 0.05
# Gaussian tails beyond this many widths are below double precision.
GAUSSIAN_REACH = 12.0
# ρ'_σ(t - s) is negligible once |t - s| exceeds this many widths.
PV_REACH = 10.0


def gaussian(t: Any, sigma: float) -> Any:
    """Unit-mass Gaussian ρ_σ."""
    return np.exp(-0.5 * (np.asarray(t) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))


def gaussian_prime(t: Any, sigma: float) -> Any:
    t = np.asarray(t)
    return -t / sigma**2 * gaussian(t, sigma)


def peak_unit(sigma: float) -> float:
    """ρ_σ(0) = (2πσ²)^{-1/2}: the height of a unit delta after mollification."""
    return 1.0 / (sigma * math.sqrt(2 * math.pi))


@dataclass(frozen=True, eq=False)
class MollifiedTrace:
    """Samples of the mollified trace with the parameters that produced them."""

    sigma: float
    samples: SampledFunction
    parts: tuple[str, ...] = PARTS
    area: float | None = None
    identity_method: str = "spectral"
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise InvalidInput("Mollifier width must be positive", sigma=self.sigma)
        if self.samples.variable != "t":
            raise InvalidInput("A mollified trace is sampled in t")

    @property
    def grid(self) -> np.ndarray:
        return self.samples.grid

    @property
    def values(self) -> np.ndarray:
        return self.samples.values

    @property
    def step(self) -> float:
        return self.samples.step

    def with_values(self, values: np.ndarray, parts: Sequence[str]) -> MollifiedTrace:
        return MollifiedTrace(
            self.sigma,
            self.samples.with_values(values),
            tuple(parts),
            self.area,
            self.identity_method,
            dict(self.metadata),
        )

    def sidecar(self) -> dict[str, Any]:
        return {
            "sigma": self.sigma,
            "area": self.area,
            "parts": list(self.parts),
            "identity_method": self.identity_method,
            **self.metadata,
        }


def _coarse_spline(
    f: Callable[[float], float], grid: np.ndarray, threads: int
) -> np.ndarray:
    """Evaluate an even smooth f on a coarse grid over |grid| and spline it."""
    top = float(np.abs(grid).max())
    coarse = uniform_grid(0.0, top + 2 * COARSE_STEP, COARSE_STEP)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        values = np.array(list(pool.map(f, coarse)))
    return CubicSpline(coarse, values)(np.abs(grid))


def _identity_remainder(sigma: float, quad: QuadratureSpec) -> Callable[[float], float]:
    """t -> ∫₀^∞ r e^{-σ²r²/2} cos(rt) / (e^{2πr} + 1) dr."""
    cutoff = 12.0

    def integrand(r: float) -> float:
        return r * math.exp(-0.5 * (sigma * r) ** 2) / (math.exp(2 * math.pi * r) + 1)

    def evaluate(t: float) -> float:
        if t == 0:
            return integrate_interval(integrand, 0.0, cutoff, quad).value
        return integrate_interval(integrand, 0.0, cutoff, quad, weight="cos", wvar=t).value

    return evaluate


def identity_part_spectral(
    area: float, sigma: float, ts: np.ndarray, quad: QuadratureSpec, threads: int = 1
) -> np.ndarray:
    """(μ/2π)[(1 - 2xD(x))/σ² - 2R(t)], x = t/(σ√2), D Dawson's integral."""
    ts = np.asarray(ts, dtype=float)
    x = ts / (sigma * math.sqrt(2))
    leading = (1 - 2 * x * dawsn(x)) / sigma**2
    remainder = _coarse_spline(_identity_remainder(sigma, quad), ts, threads)
    return area / (2 * math.pi) * (leading - 2 * remainder)


def identity_part_pv(
    area: float, sigma: float, ts: np.ndarray, quad: QuadratureSpec, threads: int = 1
) -> np.ndarray:
    """(μ/4π) ∫₀^∞ [ρ'_σ(t - s) - ρ'_σ(t + s)] / sinh(s/2) ds, one quadrature per point.

    The symmetric pairing removes the odd singularity at s = 0; near zero the
    integrand tends to -4ρ''_σ(t).
    """
    reach = PV_REACH * sigma

    def integrand(s: float, t: float) -> float:
        if s < 1e-9 * sigma:
            x = t / sigma
            second = (x * x - 1) / sigma**2 * float(gaussian(t, sigma))
            return -4 * second
        diff = float(gaussian_prime(t - s, sigma)) - float(gaussian_prime(t + s, sigma))
        return diff / math.sinh(s / 2)

    def evaluate(t: float) -> float:
        t = abs(t)
        lo = max(0.0, t - reach)
        hi = t + reach
        points = [t] if lo < t < hi else None
        return integrate_interval(
            lambda s: integrand(s, t), lo, hi, quad, points=points, label="identity PV"
        ).value

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        values = np.array(list(pool.map(evaluate, np.asarray(ts, dtype=float))))
    return area / (4 * math.pi) * values


def identity_part(
    area: float,
    sigma: float,
    ts: np.ndarray,
    *,
    method: str | None = None,
    quad: QuadratureSpec | None = None,
    threads: int | None = None,
) -> np.ndarray:
    method = setting("IDENTITY_METHOD", method)
    quad = quad or QuadratureSpec.default()
    threads = setting("THREADS", threads)
    if method == "spectral":
        return identity_part_spectral(area, sigma, ts, quad, threads)
    if method == "pv":
        return identity_part_pv(area, sigma, ts, quad, threads)
    raise InvalidInput(f"Unknown identity method: {method}", known=list(IDENTITY_METHODS))


def add_delta_train(
    values: np.ndarray,
    ts: np.ndarray,
    sigma: float,
    singularities: Sequence[tuple[float, float]],
    sign: float = 1.0,
) -> None:
    """values += sign·Σ c·(ρ_σ(t - p) + ρ_σ(t + p)), touching only nearby samples."""
    reach = GAUSSIAN_REACH * sigma
    ascending = bool(len(ts) < 2 or ts[1] > ts[0])
    for position, coefficient in singularities:
        for centre in (position, -position):
            if ascending:
                lo = np.searchsorted(ts, centre - reach, side="left")
                hi = np.searchsorted(ts, centre + reach, side="right")
                window = slice(lo, hi)
            else:
                window = np.abs(ts - centre) <= reach
            values[window] += sign * coefficient * gaussian(ts[window] - centre, sigma)


def singular_part(
    model: WaveTraceModel, sigma: float, ts: np.ndarray
) -> np.ndarray:
    values = np.zeros(len(ts))
    add_delta_train(values, np.asarray(ts, dtype=float), sigma, model.singular_part)
    return values


@cached(cache=LRUCache(maxsize=262144))
def _mollified_psi(m: int, sigma: float, t: float, tol: float, limit: int) -> float:
    quad = QuadratureSpec(tol=tol, limit=limit)
    cutoff = max(20.0, 6.0 * m)

    def integrand(r: float) -> float:
        return psi_value(m, r) * math.exp(-0.5 * (sigma * r) ** 2)

    if t == 0:
        result = integrate_interval(integrand, 0.0, cutoff, quad)
    else:
        result = integrate_interval(integrand, 0.0, cutoff, quad, weight="cos", wvar=t)
    return 2 * result.value


def mollified_psi(m: int, sigma: float, t: float, quad: QuadratureSpec | None = None) -> float:
    """Ψ_m convolved with ρ_σ: 2∫₀^∞ ψ_m(r) e^{-σ²r²/2} cos(rt) dr."""
    quad = quad or QuadratureSpec.default()
    return _mollified_psi(int(m), float(sigma), abs(float(t)), quad.tol, quad.limit)


def smooth_part(
    orders: Sequence[int],
    sigma: float,
    ts: np.ndarray,
    quad: QuadratureSpec | None = None,
    threads: int | None = None,
) -> np.ndarray:
    quad = quad or QuadratureSpec.default()
    threads = setting("THREADS", threads)
    ts = np.asarray(ts, dtype=float)
    values = np.zeros(len(ts))
    for m, count in sorted(Counter(orders).items()):
        profile = _coarse_spline(lambda t, m=m: mollified_psi(m, sigma, t, quad), ts, threads)
        values += count * profile
    return values


def transform_grid_max(
    sigma: float, r_max: float | None = None, tol: float | None = None
) -> float:
    """Shortest t range whose cosine transform recovers the cone part to ``tol``.

    Ψ_m(t) decays like (m-1)/(2m) e^{-t/2}, so cutting the transform at T
    leaves an error of about (2/π) e^{-T/2} per unit weight, which the
    deconvolution then multiplies by e^{(σ r_max)²/2}.
    """
    r_max = setting("DECOMPOSE_R_MAX", r_max)
    tol = setting("TRANSFORM_TOL", tol)
    if not (sigma > 0 and r_max > 0 and 0 < tol < 1):
        raise InvalidInput(
            "Invalid transform parameters", sigma=sigma, r_max=r_max, tol=tol
        )
    return 2 * math.log(2 / (math.pi * tol)) + (sigma * r_max) ** 2


def synthesize_mollified(
    model: WaveTraceModel,
    sigma: float,
    *,
    grid_step: float | None = None,
    grid_max: float | None = None,
    grid_min: float = 0.0,
    parts: Sequence[str] = PARTS,
    identity_method: str | None = None,
    quad: QuadratureSpec | None = None,
    threads: int | None = None,
    metadata: dict[str, Any] | None = None,
) -> MollifiedTrace:
    """Sample the mollified trace of ``model`` on a uniform t grid."""
    if not sigma > 0:
        raise InvalidInput("Mollifier width must be positive", sigma=sigma)
    grid_step = sigma / 4 if grid_step is None else grid_step
    if grid_max is None:
        grid_max = max(setting("GRID_MAX"), transform_grid_max(sigma))
    if grid_step > sigma / 4 * (1 + 1e-9):
        raise GridTooCoarse(
            "Grid step must not exceed a quarter of the mollifier width",
            step=grid_step,
            sigma=sigma,
        )
    unknown = set(parts) - set(PARTS)
    if unknown:
        raise InvalidInput("Unknown trace parts", parts=sorted(unknown))
    identity_method = setting("IDENTITY_METHOD", identity_method)
    quad = quad or QuadratureSpec.default()

    ts = uniform_grid(grid_min, grid_max, grid_step)
    values = np.zeros(len(ts))
    if "identity" in parts:
        values += identity_part(
            model.area, sigma, ts, method=identity_method, quad=quad, threads=threads
        )
    if "singular" in parts:
        values += singular_part(model, sigma, ts)
    if "smooth" in parts and model.smooth_orders:
        values += smooth_part(model.smooth_orders, sigma, ts, quad, threads)

    logger.info(
        "synthesized_trace",
        samples=len(ts),
        sigma=sigma,
        singularities=len(model.singular_part),
        cones=len(model.smooth_orders),
    )
    return MollifiedTrace(
        sigma=sigma,
        samples=SampledFunction(ts, values, "t"),
        parts=tuple(p for p in PARTS if p in parts),
        area=model.area,
        identity_method=identity_method,
        metadata=dict(metadata or {}),
    )
