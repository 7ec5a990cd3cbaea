"""
Tests for signatures, Gauss-Bonnet and the built-in groups.
"""

import math
from fractions import Fraction

import pytest

from orbispec.errors import Inconsistent, InvalidInput, NotHyperbolic
from orbispec.services.hyperbolic import KindTag, classify, compose, power
from orbispec.services.orbisurface import (
    HyperbolicStructure,
    OrbifoldSignature,
    area_gauss_bonnet,
    bolza_generators,
    euler_characteristic,
    genus_from,
    parse_preset,
    same_underlying_space,
    triangle_group_generators,
    triangle_structure,
    underlying_surface,
)

SIGNATURES = [
    (OrbifoldSignature(0, (2, 3, 7)), Fraction(-1, 42)),
    (OrbifoldSignature(0, (2, 3, 8)), Fraction(-1, 24)),
    (OrbifoldSignature(0, (2, 4, 5)), Fraction(-1, 20)),
    (OrbifoldSignature(2), Fraction(-2)),
    (OrbifoldSignature(1, (2,)), Fraction(-1, 2)),
]


class TestEulerCharacteristic:
    @pytest.mark.parametrize(("sig", "expected"), SIGNATURES)
    def test_exact_rationals(self, sig, expected):
        """χ is carried as an exact fraction."""
        assert euler_characteristic(sig) == expected

    def test_football_is_not_hyperbolic(self):
        """(0; 2, 2) has χ = 1."""
        sig = OrbifoldSignature(0, (2, 2))
        assert euler_characteristic(sig) == 1
        assert not sig.is_hyperbolic
        with pytest.raises(NotHyperbolic):
            area_gauss_bonnet(sig)

    def test_monotone_in_orders_and_genus(self):
        """Raising an order or the genus lowers χ."""
        base = OrbifoldSignature(1, (3, 4))
        assert euler_characteristic(OrbifoldSignature(1, (3, 5))) < euler_characteristic(base)
        assert euler_characteristic(OrbifoldSignature(2, (3, 4))) < euler_characteristic(base)

    def test_invalid_signatures(self):
        with pytest.raises(InvalidInput):
            OrbifoldSignature(-1)
        with pytest.raises(InvalidInput):
            OrbifoldSignature(0, (1, 3, 7))


class TestArea:
    @pytest.mark.parametrize(("sig", "chi"), SIGNATURES)
    def test_gauss_bonnet(self, sig, chi):
        """area = -2πχ to 1e-12."""
        assert area_gauss_bonnet(sig) == pytest.approx(-2 * math.pi * float(chi), abs=1e-12)

    def test_known_areas(self):
        assert area_gauss_bonnet(OrbifoldSignature(0, (2, 3, 7))) == pytest.approx(math.pi / 21, abs=1e-15)
        assert area_gauss_bonnet(OrbifoldSignature(2)) == pytest.approx(4 * math.pi, abs=1e-15)

    @pytest.mark.parametrize(("sig", "chi"), SIGNATURES)
    def test_genus_roundtrip(self, sig, chi):
        """genus_from inverts Gauss-Bonnet exactly."""
        assert genus_from(area_gauss_bonnet(sig), sig.cone_orders) == sig.genus

    def test_genus_from_examples(self):
        assert genus_from(math.pi / 21, [2, 3, 7]) == 0
        assert genus_from(4 * math.pi, []) == 2
        assert genus_from(math.pi, [2]) == 1

    def test_genus_from_inconsistent(self):
        """π/2 with one cone of order 2 solves to g = 7/8."""
        with pytest.raises(Inconsistent):
            genus_from(math.pi / 2, [2])

    def test_genus_from_needs_positive_area(self):
        with pytest.raises(InvalidInput):
            genus_from(0.0, [2, 3, 7])


class TestUnderlyingSurface:
    def test_cone_points_do_not_change_topology(self):
        """(1; 2) and (1; 3, 3) both sit on a torus."""
        first = OrbifoldSignature(1, (2,))
        second = OrbifoldSignature(1, (3, 3))
        assert underlying_surface(first) == (1, 0)
        assert same_underlying_space(first, second)
        assert not same_underlying_space(first, OrbifoldSignature(2))


class TestTriangleGroups:
    @pytest.mark.parametrize("orders", [(2, 3, 7), (2, 3, 8), (2, 4, 5), (3, 3, 4)])
    def test_generators_are_rotations(self, orders):
        """Each R_i is elliptic with |tr| = 2cos(π/m) and R_i^m = 1."""
        generators = triangle_group_generators(*orders)
        for g, m in zip(generators, orders, strict=True):
            kind = classify(g)
            assert kind.tag is KindTag.ELLIPTIC
            assert abs(g.trace) == pytest.approx(2 * math.cos(math.pi / m), abs=1e-9)
            assert power(g, m).is_identity(1e-9)

    @pytest.mark.parametrize("orders", [(2, 3, 7), (2, 3, 8), (2, 4, 5), (3, 3, 4)])
    def test_product_relation(self, orders):
        """R1·R2·R3 = identity."""
        r1, r2, r3 = triangle_group_generators(*orders)
        assert compose(r1, compose(r2, r3)).is_identity(1e-9)

    def test_237_traces(self):
        r1, r2, r3 = triangle_group_generators(2, 3, 7)
        assert abs(r1.trace) == pytest.approx(0.0, abs=1e-12)
        assert abs(r2.trace) == pytest.approx(1.0, abs=1e-12)
        assert abs(r3.trace) == pytest.approx(2 * math.cos(math.pi / 7), abs=1e-12)

    def test_euclidean_triangle_rejected(self):
        """(2, 3, 6) has angle sum π."""
        with pytest.raises(NotHyperbolic):
            triangle_group_generators(2, 3, 6)

    def test_structure_roundtrip(self):
        """Structure JSON carries the signature, area and generators."""
        structure = triangle_structure(2, 3, 7)
        parsed = HyperbolicStructure.from_dict(structure.to_dict())
        assert parsed.signature == structure.signature
        assert parsed.area == pytest.approx(math.pi / 21)
        assert parsed.generators is not None
        for a, b in zip(parsed.generators, structure.generators or (), strict=True):
            assert a.distance(b) < 1e-15

    def test_parse_preset(self):
        assert parse_preset("2,3,7") == (2, 3, 7)
        with pytest.raises(InvalidInput):
            parse_preset("2,3")
        with pytest.raises(InvalidInput):
            parse_preset("a,b,c")


class TestBolzaGroup:
    def test_generators_translate_by_systole(self):
        """All four side pairings have length 2 arccosh(1 + √2)."""
        expected = 2 * math.acosh(1 + math.sqrt(2))
        for g in bolza_generators():
            assert classify(g).length == pytest.approx(expected, abs=1e-12)

    def test_octagon_relation(self):
        """The side pairings satisfy the octagon relation.

        Which of the two mirror-image words is trivial depends on the
        direction the octagon is traversed.
        """
        a, b, c, d = bolza_generators()
        A, B, C, D = (g.inverse() for g in (a, b, c, d))

        def product(word):
            result = word[0]
            for g in word[1:]:
                result = compose(result, g)
            return result

        forward = product([a, B, c, D, A, b, C, d])
        mirrored = product([a, d, C, b, A, D, c, B])
        assert forward.is_identity(1e-9) or mirrored.is_identity(1e-9)
