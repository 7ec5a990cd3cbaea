"""
Admissible test-function pairs (h, g).

The Fourier convention is fixed once for the whole package:

    h(r) = ∫ g(u) e^{iru} du,     g(u) = (1/2π) ∫ h(r) e^{-iru} dr.

Pair factories register themselves in :data:`PAIRS` under the name used by
the command line.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from orbispec.errors import InvalidInput, OutOfStrip

from .quadrature import QuadratureSpec, integrate_half_line, integrate_interval

CONVENTION = "h(r)=∫g(u)e^{iru}du"
# Small eigenvalues put r on the imaginary axis up to i/2.
MIN_STRIP = 0.5

EVENNESS_TOL = 1e-12
SELF_CONSISTENCY_TOL = 1e-8

ArrayFunction = Callable[[Any], Any]


@dataclass(frozen=True)
class TestFunctionPair:
    """An even spectral function h with its time-side transform g.

    ``strip_width`` is the half-width of the horizontal strip where h is
    analytic and may be evaluated (infinite for entire h). Compactly
    supported pairs record the support radius of g.
    """

    __test__ = False  # keep pytest from collecting this class

    name: str
    h: ArrayFunction
    g: ArrayFunction
    g_prime: ArrayFunction
    params: dict[str, float] = field(default_factory=dict)
    strip_width: float = math.inf
    compact_support: bool = False
    support: float | None = None
    breakpoints: tuple[float, ...] = ()

    def h_real(self, r: Any) -> Any:
        return np.real(self.h(r))

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": self.params,
            "strip_width": None if math.isinf(self.strip_width) else self.strip_width,
            "compact_support": self.compact_support,
            "support": self.support,
        }


PAIRS: dict[str, Callable[[float], TestFunctionPair]] = {}


def register_pair(name: str):
    """Decorator registering a one-parameter pair factory under ``name``."""

    def decorator(factory):
        PAIRS[name] = factory
        return factory

    return decorator


def make_pair(name: str, parameter: float) -> TestFunctionPair:
    factory = PAIRS.get(name)
    if factory is None:
        raise InvalidInput(f"Unknown test function pair: {name}", known=sorted(PAIRS))
    return factory(parameter)


@register_pair("gaussian")
def gaussian_heat_pair(t: float) -> TestFunctionPair:
    """Heat kernel pair h(r) = e^{-t r²}, g(u) = (4πt)^{-1/2} e^{-u²/4t}."""
    if not t > 0:
        raise InvalidInput("Heat time must be positive", t=t)
    norm = 1.0 / math.sqrt(4 * math.pi * t)

    def h(r):
        return np.exp(-t * np.asarray(r) ** 2)

    def g(u):
        return norm * np.exp(-np.asarray(u, dtype=float) ** 2 / (4 * t))

    def g_prime(u):
        u = np.asarray(u, dtype=float)
        return -u / (2 * t) * g(u)

    return TestFunctionPair(
        name="gaussian", h=h, g=g, g_prime=g_prime, params={"t": t}
    )


def _cubic_bspline(v):
    v = np.abs(np.asarray(v, dtype=float))
    inner = 2.0 / 3.0 - v**2 + v**3 / 2
    outer = (2 - v) ** 3 / 6
    return np.where(v <= 1, inner, np.where(v <= 2, outer, 0.0))


def _cubic_bspline_prime(v):
    v = np.asarray(v, dtype=float)
    a = np.abs(v)
    inner = -2 * a + 1.5 * a**2
    outer = -((2 - a) ** 2) / 2
    return np.sign(v) * np.where(a <= 1, inner, np.where(a <= 2, outer, 0.0))


@register_pair("bspline")
def bspline_pair(width: float) -> TestFunctionPair:
    """Compactly supported pair from the centred cubic B-spline.

    g(u) = B(u/w)/w is supported on [-2w, 2w]; h(r) = (sin(rw/2)/(rw/2))⁴ is
    entire of exponential type 2w.
    """
    if not width > 0:
        raise InvalidInput("B-spline width must be positive", width=width)

    def h(r):
        return np.sinc(np.asarray(r) * width / (2 * math.pi)) ** 4

    def g(u):
        return _cubic_bspline(np.asarray(u, dtype=float) / width) / width

    def g_prime(u):
        return _cubic_bspline_prime(np.asarray(u, dtype=float) / width) / width**2

    return TestFunctionPair(
        name="bspline",
        h=h,
        g=g,
        g_prime=g_prime,
        params={"width": width},
        compact_support=True,
        support=2 * width,
        breakpoints=(width,),
    )


def _sech(x):
    # even, so fold onto Re x >= 0 where exp(-x) cannot overflow
    x = np.asarray(x)
    x = np.where(np.real(x) < 0, -x, x)
    return 2 * np.exp(-x) / (1 + np.exp(-2 * x))


@register_pair("sech")
def sech_pair(c: float) -> TestFunctionPair:
    """h(r) = sech(cr), g(u) = sech(πu/2c)/2c.

    h has poles at r = ±iπ/2c, so it is only usable while π/2c > 1/2.
    """
    if not c > 0:
        raise InvalidInput("sech scale must be positive", c=c)
    rate = math.pi / (2 * c)

    def h(r):
        return _sech(c * np.asarray(r))

    def g(u):
        return _sech(rate * np.asarray(u, dtype=float)) / (2 * c)

    def g_prime(u):
        x = rate * np.asarray(u, dtype=float)
        return -rate * np.tanh(x) * _sech(x) / (2 * c)

    return TestFunctionPair(
        name="sech", h=h, g=g, g_prime=g_prime, params={"c": c}, strip_width=rate
    )


def transform_of_g(pair: TestFunctionPair, r: float, quad: QuadratureSpec) -> float:
    """2∫₀^∞ g(u) cos(ru) du, the transform of g at r by quadrature."""

    def integrand(u: float) -> float:
        return float(pair.g(u))

    if pair.compact_support:
        assert pair.support is not None
        if r == 0:
            result = integrate_interval(
                integrand, 0.0, pair.support, quad, points=pair.breakpoints
            )
        else:
            result = integrate_interval(
                integrand, 0.0, pair.support, quad, weight="cos", wvar=r
            )
    elif r == 0:
        result = integrate_half_line(integrand, quad, label="transform of g")
    else:
        result = integrate_interval(
            integrand, 0.0, math.inf, quad, weight="cos", wvar=r, label="transform of g"
        )
    return 2 * result.value


def check_admissible(pair: TestFunctionPair, quad: QuadratureSpec | None = None) -> None:
    """Check the strip, evenness of h and that g transforms back to h at r = 0, 1, 2."""
    if not pair.strip_width > MIN_STRIP:
        raise OutOfStrip(
            "h must be analytic beyond |Im r| = 1/2",
            pair=pair.name,
            strip_width=pair.strip_width,
        )
    quad = quad or QuadratureSpec.default()
    grid = np.linspace(0.0, 20.0, 81)
    gap = np.max(np.abs(pair.h_real(grid) - pair.h_real(-grid)))
    if gap > EVENNESS_TOL:
        raise InvalidInput("h is not even", pair=pair.name, deviation=float(gap))
    for r in (0.0, 1.0, 2.0):
        expected = float(pair.h_real(r))
        computed = transform_of_g(pair, r, quad)
        if abs(computed - expected) > SELF_CONSISTENCY_TOL:
            raise InvalidInput(
                "g does not transform to h",
                pair=pair.name,
                r=r,
                expected=expected,
                computed=computed,
            )
