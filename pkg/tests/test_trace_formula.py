"""
Tests for test-function pairs and the terms of the trace formula.
"""

import dataclasses
import math

import numpy as np
import pytest

from orbispec.errors import InvalidInput, OutOfStrip
from orbispec.services.orbisurface import HyperbolicStructure, OrbifoldSignature
from orbispec.services.trace_formula import (
    PAIRS,
    QuadratureSpec,
    SpectralParameters,
    bspline_pair,
    check_admissible,
    elliptic_point_term,
    elliptic_term,
    gaussian_heat_pair,
    geometric_side,
    heat_trace_area,
    hyperbolic_term,
    identity_term,
    make_pair,
    sech_pair,
    spectral_side,
    transform_of_g,
)
from orbispec.services.geodesics import LengthSpectrum


class TestPairs:
    def test_registry(self):
        """Both shipped pairs are registered under their CLI names."""
        assert {"gaussian", "bspline"} <= set(PAIRS)
        assert make_pair("gaussian", 0.5).params == {"t": 0.5}
        with pytest.raises(InvalidInput):
            make_pair("lorentzian", 1.0)

    def test_gaussian_is_admissible(self):
        check_admissible(gaussian_heat_pair(0.5))

    def test_bspline_is_admissible(self):
        check_admissible(bspline_pair(1.0))

    def test_bspline_support(self):
        """g vanishes beyond twice the width."""
        pair = bspline_pair(0.75)
        assert pair.support == pytest.approx(1.5)
        assert float(pair.g(1.5001)) == 0.0
        assert float(pair.g(0.0)) == pytest.approx(2 / 3 / 0.75)

    def test_transform_matches_h(self):
        """2∫₀^∞ g(u) cos(ru) du reproduces h."""
        pair = gaussian_heat_pair(0.3)
        quad = QuadratureSpec.default()
        for r in (0.0, 0.5, 3.0):
            assert transform_of_g(pair, r, quad) == pytest.approx(float(pair.h(r)), abs=1e-9)

    def test_inconsistent_pair_rejected(self):
        """A g off by a factor does not pass the self-consistency check."""
        good = gaussian_heat_pair(1.0)
        bad = dataclasses.replace(good, g=lambda u: 2 * good.g(u))
        with pytest.raises(InvalidInput):
            check_admissible(bad)

    def test_nonpositive_parameters(self):
        with pytest.raises(InvalidInput):
            gaussian_heat_pair(0.0)
        with pytest.raises(InvalidInput):
            bspline_pair(-1.0)
        with pytest.raises(InvalidInput):
            sech_pair(0.0)

    def test_sech_is_admissible(self):
        """π/2c > 1/2 leaves room for the small eigenvalues."""
        pair = make_pair("sech", 1.0)
        assert pair.strip_width == pytest.approx(math.pi / 2)
        check_admissible(pair)

    def test_narrow_strip_rejected(self):
        """Past c = π the poles of sech(cr) come inside |Im r| <= 1/2."""
        with pytest.raises(OutOfStrip) as excinfo:
            check_admissible(sech_pair(4.0))
        assert excinfo.value.details["strip_width"] == pytest.approx(math.pi / 8)


class TestIdentityTerm:
    @pytest.mark.parametrize("area", [math.pi / 21, 4 * math.pi])
    def test_weyl_law(self, area):
        """For small t the identity term is μ/(4πt) to first order."""
        t = 1e-3
        value = identity_term(area, gaussian_heat_pair(t)).value
        assert 4 * math.pi * t * value / area == pytest.approx(1.0, rel=1e-3)

    @pytest.mark.parametrize("t", [0.2, 1.0])
    def test_spectral_and_time_forms_agree(self, t):
        pair = gaussian_heat_pair(t)
        spectral = identity_term(math.pi / 21, pair, method="spectral").value
        time = identity_term(math.pi / 21, pair, method="time").value
        assert spectral == pytest.approx(time, rel=1e-8)

    def test_linear_in_area(self):
        pair = gaussian_heat_pair(0.5)
        assert identity_term(2.0, pair).value == pytest.approx(2 * identity_term(1.0, pair).value)
        assert identity_term(0.0, pair).value == 0.0

    def test_compact_pair_uses_time_form(self):
        pair = bspline_pair(1.0)
        assert identity_term(1.0, pair).value == pytest.approx(
            identity_term(1.0, pair, method="time").value
        )

    def test_unknown_method(self):
        with pytest.raises(InvalidInput):
            identity_term(1.0, gaussian_heat_pair(1.0), method="residue")


class TestHyperbolicTerm:
    def test_single_geodesic(self):
        """One primitive of length ℓ contributes Σ_k ℓ g(kℓ)/(2 sinh(kℓ/2))."""
        pair = gaussian_heat_pair(0.5)
        spectrum = LengthSpectrum.from_pairs([(1.0, 1)])
        term = hyperbolic_term(spectrum, pair, max_length=3.0)
        expected = sum(float(pair.g(k)) / (2 * math.sinh(k / 2)) for k in (1, 2, 3))
        assert term.value == pytest.approx(expected, rel=1e-12)
        assert term.iterates == 3

    def test_multiplicity_scales(self):
        pair = gaussian_heat_pair(0.5)
        once = hyperbolic_term(LengthSpectrum.from_pairs([(1.2, 1)]), pair, max_length=5.0)
        twice = hyperbolic_term(LengthSpectrum.from_pairs([(1.2, 2)]), pair, max_length=5.0)
        assert twice.value == pytest.approx(2 * once.value)

    def test_max_iterate(self):
        pair = gaussian_heat_pair(0.5)
        spectrum = LengthSpectrum.from_pairs([(1.0, 1)])
        term = hyperbolic_term(spectrum, pair, max_length=10.0, max_iterate=2)
        assert term.iterates == 2
        assert term.tail_bound > 0
        with pytest.raises(InvalidInput):
            hyperbolic_term(spectrum, pair, max_iterate=0)

    def test_compact_support_has_no_tail(self):
        """Beyond the support of g nothing is truncated."""
        pair = bspline_pair(1.0)
        spectrum = LengthSpectrum.from_pairs([(1.0, 1)])
        assert hyperbolic_term(spectrum, pair, max_length=2.5).tail_bound == 0.0


class TestEllipticTerm:
    def test_order_two_against_direct_sum(self):
        """m = 2 reduces to (1/4)∫ h(r)/(2cosh πr) dr."""
        pair = gaussian_heat_pair(0.5)
        r = np.linspace(-30, 30, 60001)
        direct = 0.25 * np.trapezoid(pair.h(r) / (2 * np.cosh(np.pi * r)), r)
        value = elliptic_point_term(2, pair, QuadratureSpec.default()).value
        assert value == pytest.approx(direct, rel=1e-8)

    def test_sum_over_cone_points(self):
        pair = gaussian_heat_pair(0.5)
        quad = QuadratureSpec.default()
        single = {m: elliptic_point_term(m, pair, quad).value for m in (2, 3, 7)}
        total = elliptic_term([7, 2, 3, 3], pair).value
        assert total == pytest.approx(single[2] + 2 * single[3] + single[7], rel=1e-12)

    def test_bad_order(self):
        with pytest.raises(InvalidInput):
            elliptic_point_term(1, gaussian_heat_pair(1.0), QuadratureSpec.default())


class TestGeometricSide:
    @pytest.mark.parametrize("t", [0.5, 1.0])
    def test_dominates_constant_eigenvalue(self, structure_237, spectrum_237, t):
        """Every spectral term is positive, so the total is at least e^{t/4}."""
        report = geometric_side(
            structure_237, gaussian_heat_pair(t), 4.0, spectrum=spectrum_237
        )
        assert report.total >= math.exp(t / 4) - report.error_budget
        assert report.identity > 0
        assert report.elliptic > 0

    @pytest.mark.parametrize("t", [0.5, 1.0])
    def test_consistent_as_max_length_grows(self, structure_237, spectrum_237, t):
        """Going from L = 3 to L + 1 moves the total by less than the tail bound at L."""
        pair = gaussian_heat_pair(t)
        short = geometric_side(structure_237, pair, 3.0, spectrum=spectrum_237)
        long = geometric_side(structure_237, pair, 4.0, spectrum=spectrum_237)
        assert long.hyperbolic > short.hyperbolic
        assert abs(long.total - short.total) <= short.tail_bound
        assert long.tail_bound < short.tail_bound

    def test_report_payload(self, structure_237, spectrum_237):
        report = geometric_side(
            structure_237, gaussian_heat_pair(1.0), 4.0, spectrum=spectrum_237, threads=2
        ).to_dict()
        assert report["total"] == pytest.approx(
            report["identity"] + report["hyperbolic"] + report["elliptic"]
        )
        assert report["convention"] == "h(r)=∫g(u)e^{iru}du"
        assert report["pair"]["name"] == "gaussian"

    def test_needs_generators_or_spectrum(self):
        structure = HyperbolicStructure(OrbifoldSignature(2))
        with pytest.raises(InvalidInput):
            geometric_side(structure, gaussian_heat_pair(1.0), 2.0)


class TestSpectralSide:
    def test_from_eigenvalues(self):
        """λ = 0 is r = i/2, λ = 1/4 is r = 0 and λ = 5/4 is r = 1."""
        params = SpectralParameters.from_eigenvalues([0.0, 0.25, 1.25])
        assert params.r_values == (0.5j, 0j, 1 + 0j)
        assert params.includes_constant
        assert params.eigenvalues == pytest.approx([0.0, 0.25, 1.25])

    def test_gaussian_sum(self):
        params = SpectralParameters.from_eigenvalues([0.0, 1.25])
        value = spectral_side(params, gaussian_heat_pair(2.0))
        assert value == pytest.approx(math.exp(0.5) + math.exp(-2.0))

    def test_out_of_strip(self):
        pair = dataclasses.replace(gaussian_heat_pair(1.0), strip_width=0.25)
        with pytest.raises(OutOfStrip):
            spectral_side(SpectralParameters.from_eigenvalues([0.0]), pair)

    def test_sech_strip(self):
        """λ = 0 sits at r = i/2, inside the strip for c = 1 and outside for c = 4."""
        params = SpectralParameters.from_eigenvalues([0.0, 1.25])
        value = spectral_side(params, sech_pair(1.0))
        assert value == pytest.approx(1 / math.cos(0.5) + 1 / math.cosh(1.0))
        with pytest.raises(OutOfStrip):
            spectral_side(params, sech_pair(4.0))

    def test_invalid_parameters(self):
        with pytest.raises(InvalidInput):
            SpectralParameters.from_eigenvalues([-1.0])
        with pytest.raises(InvalidInput):
            SpectralParameters((0.7j,))

    def test_heat_trace_area(self):
        assert heat_trace_area(2.0, 0.5) == pytest.approx(4 * math.pi)
        with pytest.raises(InvalidInput):
            heat_trace_area(1.0, 0.0)
