"""
Tests for the hyperbolic core: Möbius elements, classification and conjugacy.
"""

import math

import numpy as np
import pytest

from orbispec.errors import InvalidInput, ParabolicInCocompact
from orbispec.services.hyperbolic import (
    KindTag,
    MoebiusElement,
    act,
    approx_conjugate,
    canonicalize_stack,
    classify,
    compose,
    displacement,
    fixed_point,
    kth_root,
    power,
    rotation_about,
    rotation_about_i,
    rotation_angle,
    stack,
    translation,
)


def random_elements(count, seed=0):
    rng = np.random.default_rng(seed)
    elements = []
    while len(elements) < count:
        a, b, c = rng.uniform(-2, 2, size=3)
        if abs(a) < 0.2:
            continue
        d = (1 + b * c) / a
        elements.append(MoebiusElement.of(a, b, c, d))
    return elements


class TestMoebiusElement:
    """Construction, normalisation and the group law."""

    def test_renormalises_determinant_and_sign(self):
        """Entries are divided by √det and the trace is made nonnegative."""
        g = MoebiusElement.of(-2.0, 0.0, 0.0, -2.0)
        assert g.det == pytest.approx(1.0, abs=1e-15)
        assert g.trace > 0
        assert g.is_identity()

    def test_rejects_nonpositive_determinant(self):
        """Orientation-reversing matrices are not elements of PSL(2, R)."""
        with pytest.raises(InvalidInput):
            MoebiusElement.of(0.0, 1.0, 1.0, 0.0)

    def test_identity_composition(self):
        """identity ∘ g = g."""
        g = random_elements(1)[0]
        assert compose(MoebiusElement.identity(), g).distance(g) < 1e-15

    def test_one_parameter_group_law(self):
        """a_s ∘ a_t = a_{s+t}."""
        assert compose(translation(0.7), translation(1.1)).distance(translation(1.8)) < 1e-12

    def test_involution_squares_to_identity(self):
        """R ∘ R is the identity for an order-2 rotation, despite R² = -I."""
        r = rotation_about(0.3 + 2j, math.pi)
        assert compose(r, r).is_identity(1e-12)

    def test_associativity(self):
        """Composition is associative to 1e-10 on random triples."""
        elements = random_elements(30, seed=1)
        for f, g, h in zip(elements[::3], elements[1::3], elements[2::3], strict=True):
            left = compose(compose(f, g), h)
            right = compose(f, compose(g, h))
            assert left.distance(right) < 1e-10

    def test_canonical_stack_matches_elementwise(self):
        """The batched canonicalisation agrees with MoebiusElement.of."""
        elements = random_elements(20, seed=2)
        flipped = -stack(elements)
        canonical = canonicalize_stack(flipped)
        for row, g in zip(canonical, elements, strict=True):
            assert np.abs(row - g.to_array()).max() < 1e-14
        assert np.abs(canonicalize_stack(canonical) - canonical).max() < 1e-15

    def test_dict_roundtrip(self):
        """The JSON matrix literal parses back to the same element."""
        g = random_elements(1, seed=3)[0]
        assert MoebiusElement.from_dict(g.to_dict()).distance(g) < 1e-15

    def test_malformed_literal(self):
        """Missing entries are an input error."""
        with pytest.raises(InvalidInput):
            MoebiusElement.from_dict({"a": 1, "b": 0})


class TestAction:
    """Action on the upper half-plane."""

    def test_identity_fixes_points(self):
        """identity(z) = z."""
        assert act(MoebiusElement.identity(), 0.4 + 1.3j) == 0.4 + 1.3j

    def test_translation_of_i(self):
        """a_t(i) = e^t i."""
        assert act(translation(1.5), 1j) == pytest.approx(math.exp(1.5) * 1j)

    def test_preserves_upper_half_plane(self):
        """Images of 2i stay in the upper half-plane."""
        for g in random_elements(25, seed=4):
            assert act(g, 2j).imag > 0

    def test_lower_half_plane_rejected(self):
        """Points with Im z <= 0 are refused."""
        with pytest.raises(InvalidInput):
            act(translation(1.0), 1 - 1j)

    def test_hyperbolic_displacement_at_least_length(self):
        """No point moves less than the translation length."""
        g = compose(rotation_about_i(0.4), compose(translation(1.3), rotation_about_i(-0.4)))
        grid = [complex(x, y) for x in np.linspace(-3, 3, 13) for y in np.linspace(0.2, 4, 13)]
        assert min(displacement(g, z) for z in grid) >= 1.3 - 1e-9


class TestClassification:
    """Trace-based classification."""

    def test_translation_is_hyperbolic(self):
        """diag(e^{1/2}, e^{-1/2}) has length 1 and norm e."""
        kind = classify(translation(1.0))
        assert kind.tag is KindTag.HYPERBOLIC
        assert kind.length == pytest.approx(1.0, abs=1e-12)
        assert kind.norm == pytest.approx(math.e, abs=1e-12)

    def test_rotation_is_elliptic(self):
        """Rotation about i by 2π/3 has |tr| = 1 and θ = π/3."""
        kind = classify(rotation_about_i(2 * math.pi / 3))
        assert kind.tag is KindTag.ELLIPTIC
        assert kind.angle == pytest.approx(math.pi / 3, abs=1e-12)
        assert kind.order == 3

    @pytest.mark.parametrize("k", range(1, 7))
    def test_elliptic_angle_folding(self, k):
        """Rotation by 2πk/7 reports the half angle, folded so 2θ lies in (0, π]."""
        kind = classify(rotation_about(0.3 + 1.2j, 2 * math.pi * k / 7))
        folded = min(2 * math.pi * k / 7, 2 * math.pi - 2 * math.pi * k / 7)
        assert 0 < kind.angle <= math.pi / 2
        assert 2 * kind.angle == pytest.approx(folded, abs=1e-9)
        assert kind.order == 7

    def test_parabolic_in_cocompact_group(self):
        """Trace exactly 2 is an error when the caller asserts cocompactness."""
        parabolic = MoebiusElement.of(1.0, 1.0, 0.0, 1.0)
        assert classify(parabolic).tag is KindTag.PARABOLIC
        with pytest.raises(ParabolicInCocompact):
            classify(parabolic, cocompact=True)

    def test_identity(self):
        assert classify(MoebiusElement.identity()).tag is KindTag.IDENTITY

    @pytest.mark.parametrize("k", [1, 2, 3, 7, 10])
    def test_power_multiplies_length(self, k):
        """classify(g^k) has length k·ℓ."""
        g = compose(rotation_about(0.5 + 1j, 1.0), compose(translation(0.8), rotation_about(0.5 + 1j, -1.0)))
        assert classify(power(g, k)).length == pytest.approx(0.8 * k, abs=1e-9)

    @pytest.mark.parametrize("m", [2, 3, 5, 7])
    def test_elliptic_power_is_identity(self, m):
        """An order-m rotation to the m-th power is the identity."""
        assert power(rotation_about(-1 + 0.5j, 2 * math.pi / m), m).is_identity(1e-9)

    def test_rotation_angle_tells_direction(self):
        """Rotations by φ and 2π - φ share |tr| but not the angle."""
        z = 0.2 + 0.7j
        forward = rotation_about(z, 2 * math.pi / 7)
        backward = rotation_about(z, -2 * math.pi / 7)
        assert abs(forward.trace) == pytest.approx(abs(backward.trace))
        assert rotation_angle(forward) == pytest.approx(2 * math.pi / 7, abs=1e-10)
        assert rotation_angle(backward) == pytest.approx(12 * math.pi / 7, abs=1e-10)
        assert fixed_point(forward) == pytest.approx(z, abs=1e-12)

    def test_kth_root(self):
        """kth_root inverts power for hyperbolic elements."""
        g = compose(rotation_about_i(0.9), compose(translation(2.4), rotation_about_i(-0.9)))
        root = kth_root(power(g, 3), 3)
        assert root.distance(g) < 1e-10

    def test_kth_root_rejects_elliptic(self):
        with pytest.raises(InvalidInput):
            kth_root(rotation_about_i(1.0), 2)


class TestApproxConjugate:
    """Conjugacy test against an explicit conjugator list."""

    def test_self(self):
        g = translation(1.0)
        assert approx_conjugate(g, g, [MoebiusElement.identity()])

    def test_explicit_conjugator(self):
        """w g w^{-1} is found when w is listed."""
        g = translation(1.0)
        w = rotation_about(0.3 + 1.1j, 0.8)
        h = compose(compose(w, g), w.inverse())
        assert approx_conjugate(g, h, [MoebiusElement.identity(), w])
        assert not approx_conjugate(g, h, [MoebiusElement.identity()])

    def test_trace_mismatch(self):
        """Different lengths are rejected before any conjugation."""
        assert not approx_conjugate(translation(1.0), translation(2.0), [MoebiusElement.identity()])

    def test_empty_conjugators(self):
        g = translation(1.0)
        with pytest.raises(InvalidInput):
            approx_conjugate(g, g, [])
