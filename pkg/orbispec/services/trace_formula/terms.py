"""
The four terms of the trace formula and the spectral partial sum.

Geometric side, for a cocompact Fuchsian group of covolume μ:

    identity   (μ/4π) ∫ r h(r) tanh(πr) dr
    hyperbolic Σ_c Σ_k ℓ_c g(kℓ_c) / (2 sinh(kℓ_c/2))
    elliptic   Σ_m Σ_{l=1}^{m-1} (2m sin(πl/m))^{-1} ∫ e^{-2πlr/m} h(r) / (1 + e^{-2πr}) dr
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import structlog

from orbispec.config import setting
from orbispec.errors import InvalidInput, OutOfStrip
from orbispec.services.geodesics import GroupPresentation, LengthSpectrum, length_spectrum
from orbispec.services.orbisurface import HyperbolicStructure

from .pairs import CONVENTION, TestFunctionPair
from .quadrature import QuadratureSpec, QuadResult, integrate_half_line, integrate_interval

logger = structlog.get_logger(__name__)

# Prime geodesic counting constant used by the truncation estimate; the
# observed density of the supplied spectrum raises it when larger.
PRIME_GEODESIC_CONSTANT = 2.0
TAIL_SAFETY = 4.0


# ---------------------------------------------------------------------------
# Identity term
# ---------------------------------------------------------------------------


def identity_term_spectral(
    area: float, pair: TestFunctionPair, quad: QuadratureSpec
) -> QuadResult:
    """(μ/4π)·2∫₀^∞ r h(r) tanh(πr) dr with the cutoff doubled until stable."""

    def integrand(r: float) -> float:
        return r * float(pair.h_real(r)) * math.tanh(math.pi * r)

    result = integrate_half_line(integrand, quad, label="identity term")
    return result.scaled(area / (2 * math.pi))


def identity_term_time(area: float, pair: TestFunctionPair, quad: QuadratureSpec) -> QuadResult:
    """-(μ/2π) ∫₀^∞ g'(u)/sinh(u/2) du."""

    def integrand(u: float) -> float:
        if u < 1e-8:
            # g'(u)/sinh(u/2) -> 2 g''(0) at the origin
            step = 1e-4
            return 2 * float(pair.g_prime(step)) / step
        return float(pair.g_prime(u)) / math.sinh(u / 2)

    if pair.compact_support:
        assert pair.support is not None
        result = integrate_interval(
            integrand, 0.0, pair.support, quad, points=pair.breakpoints, label="identity term"
        )
    else:
        result = integrate_half_line(integrand, quad, label="identity term")
    return result.scaled(-area / (2 * math.pi))


def identity_term(
    area: float,
    pair: TestFunctionPair,
    quad: QuadratureSpec | None = None,
    *,
    method: str | None = None,
) -> QuadResult:
    """Identity contribution; compactly supported pairs default to the time form."""
    if area < 0:
        raise InvalidInput("Area must be nonnegative", area=area)
    quad = quad or QuadratureSpec.default()
    if area == 0:
        return QuadResult(0.0, 0.0)
    if method is None:
        method = "time" if pair.compact_support else "spectral"
    if method == "spectral":
        return identity_term_spectral(area, pair, quad)
    if method == "time":
        return identity_term_time(area, pair, quad)
    raise InvalidInput(f"Unknown identity term method: {method}")


# ---------------------------------------------------------------------------
# Hyperbolic term
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicTerm:
    value: float
    tail_bound: float
    iterates: int


def _iterate_tail(pair: TestFunctionPair, length: float, first_k: int) -> float:
    """Bound on Σ_{k >= first_k} ℓ|g(kℓ)|/(2 sinh(kℓ/2)).

    |g| is nonincreasing on [0, ∞) for every shipped pair and sinh grows by
    at least e^{ℓ/2} per step, so the sum is dominated by a geometric series.
    """
    position = first_k * length
    if pair.compact_support and pair.support is not None and position >= pair.support:
        return 0.0
    head = length * abs(float(pair.g(position))) / (2 * math.sinh(position / 2))
    return head / (1 - math.exp(-length / 2))


def _length_tail(pair: TestFunctionPair, spectrum: LengthSpectrum, max_length: float, quad: QuadratureSpec) -> float:
    """Estimate for primitives longer than ``max_length``.

    Uses N(L) <= C e^L / L with C the larger of the default constant and the
    density observed in the spectrum.
    """
    if pair.compact_support and pair.support is not None and max_length >= pair.support:
        return 0.0
    constant = PRIME_GEODESIC_CONSTANT
    count = 0
    for entry in spectrum:
        count += entry.multiplicity
        constant = max(constant, count * entry.length * math.exp(-entry.length))

    def integrand(u: float) -> float:
        return math.exp(u / 2) * abs(float(pair.g(u)))

    if pair.compact_support and pair.support is not None:
        integral = integrate_interval(integrand, max_length, pair.support, quad).value
    else:
        integral = integrate_half_line(integrand, quad, start=max_length).value
    return TAIL_SAFETY * constant * integral / (1 - math.exp(-max_length))


def hyperbolic_term(
    spectrum: LengthSpectrum,
    pair: TestFunctionPair,
    *,
    max_length: float | None = None,
    max_iterate: int | None = None,
    quad: QuadratureSpec | None = None,
) -> HyperbolicTerm:
    """Σ over oriented primitives and iterates k <= max_iterate, kℓ <= max_length."""
    quad = quad or QuadratureSpec.default()
    if max_iterate is not None and max_iterate < 1:
        raise InvalidInput("max_iterate must be at least 1", max_iterate=max_iterate)
    if max_length is None:
        max_length = spectrum.max_length
    if (
        max_length is not None
        and spectrum.completeness_bound is not None
        and spectrum.completeness_bound < max_length
    ):
        logger.warning(
            "spectrum_incomplete",
            completeness_bound=spectrum.completeness_bound,
            max_length=max_length,
        )

    terms: list[float] = []
    tail = 0.0
    for entry in spectrum:
        k = 1
        while (max_iterate is None or k <= max_iterate) and (
            max_length is None or k * entry.length <= max_length
        ):
            position = k * entry.length
            terms.append(
                entry.multiplicity
                * entry.length
                * float(pair.g(position))
                / (2 * math.sinh(position / 2))
            )
            k += 1
        tail += entry.multiplicity * _iterate_tail(pair, entry.length, k)

    if max_length is not None:
        tail += _length_tail(pair, spectrum, max_length, quad)
    return HyperbolicTerm(value=math.fsum(terms), tail_bound=tail, iterates=len(terms))


# ---------------------------------------------------------------------------
# Elliptic term
# ---------------------------------------------------------------------------


def _rotation_kernel(theta: float, r: float) -> float:
    """e^{-2θr}/(1 + e^{-2πr}) without overflow for either sign of r."""
    if r >= 0:
        return math.exp(-2 * theta * r) / (1 + math.exp(-2 * math.pi * r))
    return math.exp((2 * math.pi - 2 * theta) * r) / (1 + math.exp(2 * math.pi * r))


def elliptic_point_term(m: int, pair: TestFunctionPair, quad: QuadratureSpec) -> QuadResult:
    """Contribution of one cone point of order m."""
    if m < 2:
        raise InvalidInput("Cone orders must be at least 2", order=m)
    total = QuadResult(0.0, 0.0)
    for exponent in range(1, m):
        theta = math.pi * exponent / m
        weight = 1 / (2 * m * math.sin(theta))

        def right(r: float, theta: float = theta) -> float:
            return _rotation_kernel(theta, r) * float(pair.h_real(r))

        def left(r: float, theta: float = theta) -> float:
            return _rotation_kernel(theta, -r) * float(pair.h_real(-r))

        label = f"elliptic term m={m} l={exponent}"
        part = integrate_half_line(right, quad, label=label) + integrate_half_line(
            left, quad, label=label
        )
        total = total + part.scaled(weight)
    return total


def elliptic_term(
    cone_orders: Iterable[int], pair: TestFunctionPair, quad: QuadratureSpec | None = None
) -> QuadResult:
    quad = quad or QuadratureSpec.default()
    cache: dict[int, QuadResult] = {}
    values: list[float] = []
    error = 0.0
    for m in sorted(cone_orders):
        if m not in cache:
            cache[m] = elliptic_point_term(m, pair, quad)
        values.append(cache[m].value)
        error += cache[m].error
    return QuadResult(math.fsum(values), error)


# ---------------------------------------------------------------------------
# Geometric and spectral sides
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeometricReport:
    identity: float
    hyperbolic: float
    elliptic: float
    tail_bound: float
    quadrature_error: float
    max_length: float
    max_iterate: int | None
    pair: dict[str, Any] = field(default_factory=dict)

    @property
    def total(self) -> float:
        return math.fsum([self.identity, self.hyperbolic, self.elliptic])

    @property
    def error_budget(self) -> float:
        return self.tail_bound + self.quadrature_error

    def to_dict(self) -> dict[str, Any]:
        return {
            "identity": self.identity,
            "hyperbolic": self.hyperbolic,
            "elliptic": self.elliptic,
            "total": self.total,
            "error_budget": self.error_budget,
            "tail_bound": self.tail_bound,
            "quadrature_error": self.quadrature_error,
            "max_length": self.max_length,
            "max_iterate": self.max_iterate,
            "pair": self.pair,
            "convention": CONVENTION,
        }


def geometric_side(
    structure: HyperbolicStructure,
    pair: TestFunctionPair,
    max_length: float,
    *,
    max_iterate: int | None = None,
    spectrum: LengthSpectrum | None = None,
    depth: int = 10,
    quad: QuadratureSpec | None = None,
    threads: int | None = None,
) -> GeometricReport:
    """Identity + hyperbolic + elliptic terms with an error budget.

    Without a precomputed ``spectrum`` the length spectrum is enumerated
    from the structure's generators at the given word depth.
    """
    quad = quad or QuadratureSpec.default()
    threads = setting("THREADS", threads)
    if spectrum is None:
        if not structure.generators:
            raise InvalidInput("Structure needs generators or a precomputed spectrum")
        pres = GroupPresentation.from_generators(structure.generators)
        spectrum = length_spectrum(pres, max_length, depth)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        identity_future = pool.submit(identity_term, structure.area, pair, quad)
        hyperbolic_future = pool.submit(
            hyperbolic_term,
            spectrum,
            pair,
            max_length=max_length,
            max_iterate=max_iterate,
            quad=quad,
        )
        elliptic_future = pool.submit(
            elliptic_term, structure.signature.cone_orders, pair, quad
        )
        identity = identity_future.result()
        hyperbolic = hyperbolic_future.result()
        elliptic = elliptic_future.result()

    report = GeometricReport(
        identity=identity.value,
        hyperbolic=hyperbolic.value,
        elliptic=elliptic.value,
        tail_bound=hyperbolic.tail_bound,
        quadrature_error=identity.error + elliptic.error,
        max_length=max_length,
        max_iterate=max_iterate,
        pair=pair.to_dict(),
    )
    logger.info("geometric_side", total=report.total, error_budget=report.error_budget)
    return report


@dataclass(frozen=True)
class SpectralParameters:
    """Spectral parameters r_n with λ_n = r_n² + 1/4.

    Each r is real and nonnegative, or purely imaginary with |Im r| <= 1/2
    for the small eigenvalues; r = i/2 is the constant eigenfunction.
    """

    r_values: tuple[complex, ...] = ()

    def __post_init__(self) -> None:
        for r in self.r_values:
            r = complex(r)
            real_ok = r.imag == 0 and r.real >= 0
            imaginary_ok = r.real == 0 and 0 <= r.imag <= 0.5 + 1e-12
            if not (real_ok or imaginary_ok):
                raise InvalidInput(
                    "Spectral parameter must be real >= 0 or in i[0, 1/2]", r=str(r)
                )

    @classmethod
    def from_eigenvalues(cls, eigenvalues: Iterable[float]) -> SpectralParameters:
        values = []
        for eigenvalue in eigenvalues:
            if eigenvalue < 0:
                raise InvalidInput("Laplace eigenvalues are nonnegative", eigenvalue=eigenvalue)
            shifted = eigenvalue - 0.25
            if shifted >= 0:
                values.append(complex(math.sqrt(shifted), 0.0))
            else:
                values.append(complex(0.0, math.sqrt(-shifted)))
        return cls(tuple(values))

    @property
    def eigenvalues(self) -> list[float]:
        return [float((complex(r) ** 2).real + 0.25) for r in self.r_values]

    @property
    def includes_constant(self) -> bool:
        return any(cmath.isclose(complex(r), 0.5j, abs_tol=1e-12) for r in self.r_values)


def spectral_side(params: SpectralParameters, pair: TestFunctionPair) -> float:
    """Σ h(r_n) over the supplied parameters."""
    values: list[float] = []
    for r in params.r_values:
        r = complex(r)
        if abs(r.imag) > pair.strip_width:
            raise OutOfStrip(
                "Spectral parameter outside the analyticity strip of h",
                r=str(r),
                strip_width=pair.strip_width,
            )
        values.append(float(np.real(pair.h(r if r.imag else r.real))))
    return math.fsum(values)


def heat_trace_area(theta: float, t: float) -> float:
    """Weyl estimate 4πt·Θ(t) of the area from a heat-trace value."""
    if not t > 0:
        raise InvalidInput("Heat time must be positive", t=t)
    return 4 * math.pi * t * theta
