"""
Recover geometry from a mollified wave trace.

The identity part is fixed by the area, so it is subtracted first. What is
left is a train of Gaussian peaks over the smooth cone contribution. The
shortest remaining peak is always a primitive geodesic: its multiplicity is
read off the peak height, its whole iterate train is removed, and the search
moves on. The final residual is the cone part, which is transformed back to
the spectral variable and fitted by integer sums of ψ_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog
from scipy.integrate import simpson
from scipy.ndimage import median_filter
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

from orbispec.config import setting
from orbispec.errors import (
    GridCoverage,
    InvalidInput,
    NonIntegerMultiplicity,
    OverlapUnresolved,
)
from orbispec.logging_helpers import ProgressLogger
from orbispec.services.geodesics import LengthSpectrum, SpectrumEntry
from orbispec.services.orbisurface import genus_from
from orbispec.services.psi import ConeFit, SampledFunction, decompose_cone_sum, uniform_grid

from .model import iterate_coefficient
from .synthesis import (
    MollifiedTrace,
    add_delta_train,
    gaussian,
    identity_part,
    peak_unit,
    transform_grid_max,
)

logger = structlog.get_logger(__name__)

# Median window of the running smooth estimate, in mollifier widths, and
# its floor in time units.
BASELINE_WIDTHS = 16
BASELINE_MIN_SPAN = 0.5
# Detections closer to t = 0 than this many widths are ignored.
ORIGIN_GUARD = 4.0
OVERLAP_WIDTHS = 4.0
COVERAGE_WIDTHS = 6.0
AREA_FIT_WIDTHS = 3.0
# Half-width of the window a single peak is fitted on.
PEAK_FIT_WIDTHS = 2.0
# Iterates this fraction of a length past max_length still count as inside.
ITERATE_SLACK = 1e-4
TRANSFORM_CHUNK = 16


@dataclass(frozen=True)
class Detection:
    position: float
    amplitude: float

    def to_dict(self) -> dict[str, float]:
        return {"position": self.position, "amplitude": self.amplitude}


@dataclass(frozen=True)
class InverseResult:
    spectrum: LengthSpectrum
    cone_orders: tuple[int, ...]
    genus: int
    area: float
    residual: MollifiedTrace
    fit: ConeFit

    def to_dict(self) -> dict[str, Any]:
        return {
            "area": self.area,
            "genus": self.genus,
            "cone_orders": list(self.cone_orders),
            "lengths": [e.to_dict() for e in self.spectrum],
            "fit_residual": self.fit.residual,
        }


def _identity_values(trace: MollifiedTrace, area: float) -> np.ndarray:
    if "identity" not in trace.parts:
        return np.zeros(len(trace.grid))
    return identity_part(area, trace.sigma, trace.grid, method=trace.identity_method)


def _baseline(values: np.ndarray, sigma: float, step: float) -> np.ndarray:
    span = max(BASELINE_WIDTHS * sigma, BASELINE_MIN_SPAN)
    size = max(3, int(round(span / step)) | 1)
    return median_filter(values, size=size, mode="nearest")


def _refine_peak(ts: np.ndarray, values: np.ndarray, index: int) -> tuple[float, float]:
    """Sub-grid peak position and height from the three samples around index.

    A parabola through the log-values is exact for Gaussians; a plain
    parabola is used when a sample is not positive.
    """
    if index <= 0 or index >= len(values) - 1:
        return float(ts[index]), float(values[index])
    left, centre, right = values[index - 1], values[index], values[index + 1]
    step = float(ts[index + 1] - ts[index])
    if left > 0 and centre > 0 and right > 0:
        a, b, c = math.log(left), math.log(centre), math.log(right)
        exponentiate = True
    else:
        a, b, c = float(left), float(centre), float(right)
        exponentiate = False
    curvature = a - 2 * b + c
    if curvature >= 0:
        return float(ts[index]), float(centre)
    offset = 0.5 * (a - c) / curvature
    peak = b - 0.25 * (a - c) * offset
    height = math.exp(peak) if exponentiate else peak
    return float(ts[index]) + offset * step, height


def _fit_peak(
    ts: np.ndarray, values: np.ndarray, guess: float, sigma: float
) -> Detection:
    """One mollified delta over a linear background, fitted near ``guess``.

    For a trial position the weight and background are linear least
    squares; the position itself is a bounded scalar search within half a
    width of the guess.
    """
    near = np.abs(ts - guess) <= PEAK_FIT_WIDTHS * sigma
    t, y = ts[near], values[near]

    def solve(position: float) -> tuple[np.ndarray, float]:
        offset = t - position
        design = np.column_stack([gaussian(offset, sigma), np.ones(len(t)), offset])
        coefficients, *_ = np.linalg.lstsq(design, y, rcond=None)
        misfit = design @ coefficients - y
        return coefficients, float(misfit @ misfit)

    best = minimize_scalar(
        lambda position: solve(position)[1],
        bounds=(guess - sigma / 2, guess + sigma / 2),
        method="bounded",
        options={"xatol": 1e-10 * max(1.0, guess)},
    )
    position = float(best.x)
    coefficients, _ = solve(position)
    return Detection(position, float(coefficients[0]))


def _detect(
    ts: np.ndarray, detrended: np.ndarray, sigma: float, threshold: float, start: float
) -> list[Detection]:
    """Coarse peaks of the detrended samples, refined to sub-grid by a log-parabola."""
    unit = peak_unit(sigma)
    indices, _ = find_peaks(detrended, height=threshold * unit)
    detections = []
    for index in indices:
        if ts[index] < start:
            continue
        position, height = _refine_peak(ts, detrended, int(index))
        detections.append(Detection(position, height / unit))
    return detections


def _positive_half(trace: MollifiedTrace) -> tuple[np.ndarray, np.ndarray]:
    keep = trace.grid >= -1e-12
    return trace.grid[keep], trace.values[keep]


def detect_singularities(
    trace: MollifiedTrace, area: float | None = None, threshold: float | None = None
) -> list[Detection]:
    """Peaks of the trace minus identity part and running smooth estimate.

    Amplitudes are delta coefficients, fitted on the samples around each peak.
    """
    threshold = setting("DETECTION_THRESHOLD", threshold)
    area = trace.area if area is None else area
    if area is None:
        raise InvalidInput("Area is needed to remove the identity part")
    residual = trace.values - _identity_values(trace, area)
    detrended = residual - _baseline(residual, trace.sigma, trace.step)
    keep = trace.grid >= 0
    ts, residual = trace.grid[keep], residual[keep]
    coarse = _detect(ts, detrended[keep], trace.sigma, threshold, ORIGIN_GUARD * trace.sigma)
    return [_fit_peak(ts, residual, d.position, trace.sigma) for d in coarse]


def peel_off(
    trace: MollifiedTrace,
    area: float | None = None,
    max_length: float | None = None,
    *,
    threshold: float | None = None,
    multiplicity_tol: float | None = None,
    progress: ProgressLogger | None = None,
) -> tuple[LengthSpectrum, MollifiedTrace]:
    """Primitive lengths and multiplicities below ``max_length``, and the residual."""
    threshold = setting("DETECTION_THRESHOLD", threshold)
    multiplicity_tol = setting("MULTIPLICITY_TOL", multiplicity_tol)
    area = trace.area if area is None else area
    if area is None:
        raise InvalidInput("Area is needed to remove the identity part")
    sigma = trace.sigma
    ts = trace.grid
    if max_length is None:
        # traces synthesized from a truncated model record where the train stops
        max_length = trace.metadata.get("max_length")
    if max_length is None:
        max_length = float(ts[-1]) - COVERAGE_WIDTHS * sigma
    if ts[-1] < max_length + COVERAGE_WIDTHS * sigma:
        raise GridCoverage(
            "Trace grid must reach past max_length by six widths",
            grid_max=float(ts[-1]),
            max_length=max_length,
        )

    residual = trace.values - _identity_values(trace, area)
    detrended = residual - _baseline(residual, sigma, trace.step)
    entries: list[SpectrumEntry] = []
    start = ORIGIN_GUARD * sigma
    positive = ts >= 0

    while True:
        detections = [
            d
            for d in _detect(ts[positive], detrended[positive], sigma, threshold, start)
            if d.position <= max_length + OVERLAP_WIDTHS * sigma
        ]
        if not detections or detections[0].position > max_length:
            break
        first = detections[0]
        if len(detections) > 1 and detections[1].position - first.position < OVERLAP_WIDTHS * sigma:
            raise OverlapUnresolved(
                "Two singularities closer than four mollifier widths",
                positions=[first.position, detections[1].position],
                sigma=sigma,
            )
        if entries and first.position - entries[-1].length < OVERLAP_WIDTHS * sigma:
            raise OverlapUnresolved(
                "Recovered lengths closer than four mollifier widths",
                positions=[entries[-1].length, first.position],
                sigma=sigma,
            )
        fitted = _fit_peak(ts[positive], residual[positive], first.position, sigma)
        length = fitted.position
        ratio = fitted.amplitude / iterate_coefficient(length, 1)
        multiplicity = round(ratio)
        if abs(ratio - multiplicity) > multiplicity_tol or multiplicity < 1:
            raise NonIntegerMultiplicity(
                "Peak amplitude is not an integer multiple of a primitive weight",
                length=length,
                ratio=ratio,
            )
        train = [
            (k * length, multiplicity * iterate_coefficient(length, k))
            for k in range(1, int(max_length / length + ITERATE_SLACK) + 1)
        ]
        add_delta_train(residual, ts, sigma, train, sign=-1.0)
        add_delta_train(detrended, ts, sigma, train, sign=-1.0)
        entries.append(SpectrumEntry(length, multiplicity))
        logger.debug("peeled", length=length, multiplicity=multiplicity, iterates=len(train))
        if progress is not None:
            progress.step(f"length {length:.6f} x{multiplicity}")
        start = length + 0.5 * OVERLAP_WIDTHS * sigma

    spectrum = LengthSpectrum(tuple(entries), max_length=max_length)
    logger.info("peel_off", lengths=len(entries), max_length=max_length)
    return spectrum, trace.with_values(residual, ("smooth",))


def _check_transform_reach(trace: MollifiedTrace, r_max: float | None = None) -> None:
    ts, _ = _positive_half(trace)
    if len(ts) == 0 or ts[0] > 1e-9:
        raise GridCoverage("The trace grid must include t = 0", grid_min=float(trace.grid[0]))
    required = transform_grid_max(trace.sigma, r_max)
    grid_max = float(trace.grid[-1])
    if grid_max < required:
        raise GridCoverage(
            f"The cone transform needs t up to {required:.2f}, the grid stops at {grid_max:.2f}",
            grid_max=grid_max,
            required=required,
            sigma=trace.sigma,
        )


def residual_to_spectral(
    residual: MollifiedTrace, r_max: float | None = None, r_step: float | None = None
) -> SampledFunction:
    """S(r) = e^{σ²r²/2}·(1/π)∫₀^T R(t) cos(rt) dt by Simpson's rule on the t ≥ 0 half."""
    r_max = setting("DECOMPOSE_R_MAX", r_max)
    r_step = setting("DECOMPOSE_R_STEP", r_step)
    _check_transform_reach(residual, r_max)
    ts, values = _positive_half(residual)
    rs = uniform_grid(0.0, r_max, r_step)
    out = np.empty(len(rs))
    for lo in range(0, len(rs), TRANSFORM_CHUNK):
        block = rs[lo : lo + TRANSFORM_CHUNK]
        kernel = np.cos(np.outer(block, ts))
        out[lo : lo + TRANSFORM_CHUNK] = simpson(kernel * values[None, :], x=ts, axis=1)
    out *= np.exp(0.5 * (residual.sigma * rs) ** 2) / math.pi
    return SampledFunction(rs, out, "r", {"sigma": residual.sigma})


def estimate_area(trace: MollifiedTrace) -> float:
    """Area from the singularity at t = 0.

    Least squares of the samples with |t| <= 3σ against the unit-area
    identity part plus a constant for the locally flat remainder.
    """
    sigma = trace.sigma
    near = np.abs(trace.grid) <= AREA_FIT_WIDTHS * sigma
    if near.sum() < 3:
        raise GridCoverage("The trace grid must sample the origin", sigma=sigma)
    ts = trace.grid[near]
    unit_identity = identity_part(1.0, sigma, ts, method=trace.identity_method)
    design = np.column_stack([unit_identity, np.ones(len(ts))])
    coefficients, *_ = np.linalg.lstsq(design, trace.values[near], rcond=None)
    area = float(coefficients[0])
    logger.info("estimated_area", area=area)
    return area


def full_inverse(
    trace: MollifiedTrace,
    area: float | None = None,
    max_order: int | None = None,
    *,
    max_length: float | None = None,
    mode: str = "noisy",
    progress: ProgressLogger | None = None,
) -> InverseResult:
    """Lengths with multiplicities, cone orders and genus from a mollified trace."""
    _check_transform_reach(trace)
    if area is None:
        area = trace.area if trace.area is not None else estimate_area(trace)
    if progress is not None:
        progress.start()
    spectrum, residual = peel_off(trace, area, max_length, progress=progress)
    samples = residual_to_spectral(residual)
    fit = decompose_cone_sum(samples, max_order, mode)
    orders = tuple(fit.multiset)
    genus = genus_from(area, orders)
    if progress is not None:
        progress.success(f"{len(spectrum)} lengths, cones {list(orders)}, genus {genus}")
        progress.complete()
    return InverseResult(spectrum, orders, genus, area, residual, fit)
