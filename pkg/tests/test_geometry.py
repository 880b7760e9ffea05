"""
Geometry tests for halfstrip.
"""

import numpy as np
import pytest

from halfstrip.exceptions import DomainError
from halfstrip.geometry import (
    Cone,
    ContourSpec,
    Domain,
    Region,
    Side,
    StripGeometry,
    chord_arc_constant,
    classify,
    cone_contains,
    contour_leg,
    contour_parameter,
    contour_point,
    exhaustion_curve,
    halfplane_line,
    kernel_radius,
    line,
    translate_p,
    translate_p_inv,
)


class TestClassify:
    """Tests for point classification."""

    @pytest.mark.parametrize(
        "w, expected",
        [
            (0.5j, Region.OMEGA_PLUS),
            (0.3 + 5j, Region.OMEGA_PLUS),
            (2.0, Region.OMEGA_MINUS),
            (-0.5j, Region.OMEGA_MINUS),
            (-1.5 + 2j, Region.OMEGA_MINUS),
            (-1 + 2j, Region.GAMMA1),
            (0.25, Region.GAMMA2),
            (1 + 0.1j, Region.GAMMA3),
            (-1.0, Region.CORNER_LEFT),
            (1.0, Region.CORNER_RIGHT),
        ],
    )
    def test_regions(self, geometry, w, expected):
        """Test each region tag on a representative point."""
        assert classify(w, geometry) is expected

    def test_snap_onto_contour(self, geometry):
        """Test points within the snap tolerance land on Gamma."""
        assert classify(1 + 1e-14 + 3j, geometry) is Region.GAMMA3
        assert classify(0.2 + 1e-14j, geometry) is Region.GAMMA2
        assert classify(0.2 + 1e-6j, geometry) is Region.OMEGA_PLUS

    def test_corner_flags(self):
        """Test region helper properties."""
        assert Region.CORNER_LEFT.is_corner
        assert Region.CORNER_LEFT.is_boundary
        assert Region.GAMMA2.leg == 2
        assert Region.OMEGA_PLUS.leg is None
        assert not Region.OMEGA_MINUS.is_boundary

    def test_scaled_strip(self):
        """Test classification scales with sigma."""
        wide = StripGeometry(3.0)
        assert classify(2 + 1j, wide) is Region.OMEGA_PLUS
        assert classify(3 + 1j, wide) is Region.GAMMA3

    def test_invalid_sigma(self):
        """Test a non-positive half-width is rejected."""
        with pytest.raises(DomainError):
            StripGeometry(0.0)
        with pytest.raises(DomainError):
            StripGeometry(-1.0)


class TestDomain:
    """Tests for open domain membership."""

    def test_vectorised_membership(self, geometry):
        """Test array membership matches scalar classification."""
        points = np.array([0.5j, 2.0, -0.5j, 0.1 + 3j])
        inside = geometry.contains(Domain.OMEGA_PLUS, points)
        assert inside.tolist() == [True, False, False, True]
        assert geometry.contains(Domain.OMEGA_MINUS, 2.0) is True

    def test_halfplanes(self, geometry):
        """Test the half-plane domains."""
        assert Domain.UPPER.contains(1j, 1.0)
        assert Domain.LOWER.contains(-1j, 1.0)
        assert Domain.RIGHT_OF_LEFT_LINE.contains(-0.5, 1.0)
        assert not Domain.LEFT_OF_RIGHT_LINE.contains(1.5, 1.0)

    def test_covers(self):
        """Test which domains contain each half-strip side."""
        assert Domain.UPPER.covers(Side.PLUS)
        assert not Domain.UPPER.covers(Side.MINUS)
        assert Domain.ENTIRE.covers(Side.MINUS)
        assert Domain.for_side(Side.MINUS) is Domain.OMEGA_MINUS


class TestContour:
    """Tests for the contours Gamma_{s,t}."""

    def test_arc_length_points(self, contour_factory):
        """Test the arc-length parametrisation on each leg."""
        c = contour_factory(s=1.0, t=0.5)
        assert contour_point(0.0, c) == pytest.approx(0.5j)
        assert contour_point(-3.0, c) == pytest.approx(-1 + 2.5j)
        assert contour_point(2.5, c) == pytest.approx(1 + 2.0j)
        assert contour_point(-1.0, c) == pytest.approx(-1 + 0.5j)

    def test_parameter_inverts_point(self, contour_factory):
        """Test contour_parameter inverts contour_point."""
        c = contour_factory(s=0.75, t=0.25)
        for b in (-5.0, -0.75, -0.3, 0.0, 0.6, 0.75, 4.0):
            assert contour_parameter(contour_point(b, c), c) == pytest.approx(b)

    def test_vectorised_points(self, contour_factory):
        """Test contour_point on arrays."""
        c = contour_factory()
        points = contour_point(np.array([-2.0, 0.0, 2.0]), c)
        assert points.shape == (3,)
        assert points[0] == pytest.approx(-1 + 1j)

    def test_leg_index(self, contour_factory):
        """Test leg lookup; corners belong to leg 2."""
        c = contour_factory()
        assert contour_leg(-1 + 2j, c) == 1
        assert contour_leg(1.0, c) == 2
        assert contour_leg(1 + 2j, c) == 3
        with pytest.raises(DomainError):
            contour_leg(0.5j, c)

    def test_orientation(self, contour_factory):
        """Test legs run down, right, then up."""
        legs = contour_factory().legs
        assert [leg.element for leg in legs] == [-1j, 1.0, 1j]
        assert legs[0].is_ray and not legs[1].is_ray
        assert legs[1].length == pytest.approx(2.0)

    def test_invalid_contour(self):
        """Test a non-positive width is rejected."""
        with pytest.raises(DomainError):
            ContourSpec(0.0, 0.0)


class TestLines:
    """Tests for the lines gamma_j and half-plane lines."""

    def test_leg_lines(self, geometry):
        """Test each gamma_j carries its leg's orientation."""
        assert line(1, geometry).direction == -1j
        assert line(2, geometry).point(0.5) == pytest.approx(0.5)
        assert line(3, geometry).anchor == 1.0
        with pytest.raises(DomainError):
            line(4, geometry)

    def test_halfplane_line_distance(self, geometry):
        """Test a half-plane line lies at the requested distance."""
        upper = halfplane_line(Domain.UPPER, 0.5, geometry)
        assert upper.distance(0j) == pytest.approx(0.5)
        right = halfplane_line(Domain.RIGHT_OF_RIGHT_LINE, 2.0, geometry)
        assert right.distance(1.0) == pytest.approx(2.0)

    def test_halfplane_line_rejects(self, geometry):
        """Test non-positive offsets and non half-planes are rejected."""
        with pytest.raises(DomainError):
            halfplane_line(Domain.UPPER, 0.0, geometry)
        with pytest.raises(DomainError):
            halfplane_line(Domain.OMEGA_PLUS, 1.0, geometry)


class TestTranslation:
    """Tests for the translation between gamma_{s,t} and Gamma_{s,t}."""

    @pytest.mark.parametrize("zeta", [-1 + 3j, 0.4, 1 + 2j])
    def test_round_trip(self, geometry, zeta):
        """Test translate_p_inv undoes translate_p on each leg."""
        s, t = 0.75, 0.25
        image = translate_p(zeta, s, t, geometry)
        assert contour_leg(image, ContourSpec(s, t)) in (1, 2, 3)
        assert translate_p_inv(image, s, t, geometry) == pytest.approx(zeta)

    def test_off_contour(self, geometry):
        """Test points not on gamma_{s,t} are rejected."""
        with pytest.raises(DomainError):
            translate_p(0.5j, 0.75, 0.25, geometry)


class TestCone:
    """Tests for approach cones."""

    def test_bisector_points_inward(self, geometry):
        """Test the plus cone opens into Omega+."""
        cone = Cone(0.2, 1.0, Side.PLUS, geometry)
        assert cone.leg == 2
        assert classify(cone.approach_point(0.1), geometry) is Region.OMEGA_PLUS
        minus = Cone(1 + 2j, 1.0, Side.MINUS, geometry)
        assert classify(minus.approach_point(0.1), geometry) is Region.OMEGA_MINUS

    def test_membership(self, geometry):
        """Test open membership; the vertex is excluded."""
        cone = Cone(-1 + 1j, 0.5, Side.PLUS, geometry)
        assert cone_contains(cone, -0.9 + 1.01j)
        assert not cone_contains(cone, -0.9 + 1.2j)
        assert not cone.contains(-1 + 1j)

    def test_corner_vertex_rejected(self, geometry):
        """Test cones are undefined at corners and off Gamma."""
        with pytest.raises(DomainError):
            Cone(1.0, 1.0, Side.PLUS, geometry)
        with pytest.raises(DomainError):
            Cone(0.5j, 1.0, Side.PLUS, geometry)
        with pytest.raises(DomainError):
            Cone(0.2, 0.0, Side.PLUS, geometry)


class TestConstants:
    """Tests for chord-arc constants, kernel radii and exhaustion curves."""

    def test_chord_arc_bound(self, geometry):
        """Test the chord-arc inequality on a sample of parameters."""
        for b0 in (-3.0, -0.4, 0.0, 0.7, 2.5):
            constant = chord_arc_constant(b0, geometry)
            zeta0 = contour_point(b0, geometry.boundary)
            b = np.linspace(-10, 10, 401)
            chords = np.abs(contour_point(b, geometry.boundary) - zeta0)
            assert np.all(chords >= constant * np.abs(b - b0) - 1e-12)

    def test_chord_arc_corner(self, geometry):
        """Test the constant is undefined at a corner parameter."""
        with pytest.raises(DomainError):
            chord_arc_constant(1.0, geometry)

    def test_kernel_radius(self, geometry):
        """Test the radius is half the distance to the nearest corner."""
        assert kernel_radius(0.0, geometry) == pytest.approx(0.5)
        assert kernel_radius(1 + 10j, geometry) == pytest.approx(1.0)
        with pytest.raises(DomainError):
            kernel_radius(-1.0, geometry)

    def test_exhaustion_curve(self, geometry):
        """Test the exhaustion polygon is closed and inside Omega+."""
        vertices = exhaustion_curve(3, geometry)
        assert vertices[0] == vertices[-1]
        assert all(geometry.contains(Domain.OMEGA_PLUS, v) for v in vertices)
        assert vertices[2] == pytest.approx(0.75 + 3j)
        with pytest.raises(DomainError):
            exhaustion_curve(0, geometry)

    def test_distance_to_boundary(self, geometry):
        """Test the Euclidean distance to Gamma."""
        assert geometry.distance_to_boundary(0.5j) == pytest.approx(0.5)
        assert geometry.distance_to_boundary(3 + 2j) == pytest.approx(2.0)
        assert geometry.distance_to_boundary(2 - 1j) == pytest.approx(np.sqrt(2.0))
