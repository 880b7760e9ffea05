"""
Quadrature tests for halfstrip.
"""

import mpmath
import numpy as np
import pytest

from halfstrip.exceptions import DomainError, EvaluationError, TruncationError
from halfstrip.geometry import ContourSpec, LineSpec
from halfstrip.quadrature import (
    Decay,
    QuadratureSpec,
    contour_lp_integral,
    contour_rule,
    integrate_contour,
    integrate_line,
    integrate_polygon,
    integrate_ray,
    line_rule,
    lp_norm_on_contour,
    lp_norm_on_line,
    rule_lp_norm,
)

# Integral of |zeta - 2|^-2 |d zeta| over Gamma for sigma = 1, leg by leg:
# pi/6 on the left ray, 2/3 on the segment, pi/2 on the right ray.
POLE_TWO_L2_SQUARED = 2.0 / 3.0 + 2.0 * np.pi / 3.0


class TestDecay:
    """Tests for decay classes."""

    def test_algebraic_tail(self):
        """Test the tail integral of an algebraic bound."""
        decay = Decay.algebraic(3.0, 2.0)
        assert decay.tail(2.0) == pytest.approx(2.0 * 2.0**-2 / 2.0)
        assert decay.tail(decay.height_for(1e-8)) <= 1e-8 * (1 + 1e-9)

    def test_exponential_tail(self):
        """Test the tail integral of an exponential bound."""
        decay = Decay.exponential(2.0, 1.0)
        assert decay.tail(1.0) == pytest.approx(np.exp(-2.0) / 2.0)
        assert decay.height_for(10.0) == 1.0

    def test_not_integrable(self):
        """Test slow algebraic decay has an infinite tail."""
        decay = Decay.algebraic(1.0, 1.0)
        assert decay.tail(5.0) == np.inf
        with pytest.raises(TruncationError):
            decay.height_for(1e-6)

    def test_algebra(self):
        """Test powers, products and sums of decay classes."""
        pole = Decay.algebraic(1.0, 1.0)
        assert pole.power(2.0).rate == 2.0
        assert pole.times(Decay.algebraic(2.0)).rate == 3.0
        assert pole.times(Decay.exponential(0.5)).kind == "exponential"
        assert pole.plus(Decay.exponential(3.0)).kind == "algebraic"
        assert Decay.zero().plus(pole) is pole
        assert pole.with_kernel().rate == 2.0

    def test_invalid(self):
        """Test invalid kinds and rates are rejected."""
        with pytest.raises(DomainError):
            Decay("polynomial", 1.0)
        with pytest.raises(DomainError):
            Decay.algebraic(-1.0)

    def test_unset_scale(self):
        """Test a bound without a scale cannot be evaluated."""
        with pytest.raises(TruncationError):
            Decay.algebraic(2.0).bound(1.0)


class TestQuadratureSpec:
    """Tests for quadrature tolerances."""

    def test_defaults_from_settings(self, monkeypatch):
        """Test tolerances default to the environment settings."""
        monkeypatch.setenv("HALFSTRIP_QUAD_REL_TOL", "1e-6")
        assert QuadratureSpec().rel_tol == 1e-6

    def test_replace(self, quad_spec):
        """Test replace keeps the other fields."""
        changed = quad_spec.replace(abs_tol=1e-9)
        assert changed.abs_tol == 1e-9
        assert changed.rel_tol == quad_spec.rel_tol

    def test_invalid(self):
        """Test non-positive tolerances are rejected."""
        with pytest.raises(DomainError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(DomainError):
            QuadratureSpec(truncation_height=-1.0)


class TestIntegrateContour:
    """Tests for adaptive contour integration."""

    def test_residue(self, geometry, quad_spec):
        """Test a closed-contour integral against the residue theorem."""
        w_in, w_out = 0.5j, 2.0 + 0j

        def f(zeta):
            return 1.0 / ((zeta - w_in) * (zeta - w_out))

        result = integrate_contour(
            f, geometry.boundary, quad_spec, decay=Decay.algebraic(2.0), targets=[w_in, w_out]
        )
        expected = 2j * np.pi / (w_in - w_out)
        assert result.value == pytest.approx(expected, abs=1e-8)
        assert result.accurate
        assert len(result.leg_values) == 3
        assert sum(result.leg_values) == pytest.approx(result.value)

    def test_arc_length(self, geometry, quad_spec):
        """Test arc-length integration against a closed form."""
        result = integrate_contour(
            lambda zeta: abs(zeta - 2.0) ** -2,
            geometry.boundary,
            quad_spec,
            decay=Decay.algebraic(2.0),
            arc_length=True,
        )
        assert result.value.real == pytest.approx(POLE_TWO_L2_SQUARED, rel=1e-8)
        assert result.leg_values[1].real == pytest.approx(2.0 / 3.0, rel=1e-9)

    def test_vector_valued(self, geometry, quad_spec):
        """Test several targets integrate in one pass."""
        targets = np.array([0.5j, 0.2 + 1j])

        def f(zeta):
            return 1.0 / ((zeta - targets) * (zeta - 3.0))

        result = integrate_contour(f, geometry.boundary, quad_spec, decay=Decay.algebraic(2.0))
        assert result.value.shape == (2,)
        assert result.value == pytest.approx(2j * np.pi / (targets - 3.0), abs=1e-8)

    def test_leg_subset(self, geometry, quad_spec):
        """Test skipped legs contribute zero."""
        result = integrate_contour(
            lambda zeta: 1.0, geometry.boundary, quad_spec, legs=(2,)
        )
        assert result.value == pytest.approx(2.0)
        assert result.leg_values[0] == 0

    def test_non_finite_sample(self, geometry, quad_spec):
        """Test a pole on the contour raises EvaluationError."""
        with pytest.raises(EvaluationError):
            integrate_contour(
                lambda zeta: np.nan if zeta.real > 0.5 else 1.0,
                ContourSpec(1.0, 0.0),
                quad_spec,
                legs=(2,),
            )

    def test_violated_tail_bound(self, geometry, quad_spec):
        """Test a declared bound that the integrand exceeds is detected."""
        with pytest.raises(TruncationError):
            integrate_contour(
                lambda zeta: (zeta - 2.0) ** -2,
                geometry.boundary,
                quad_spec,
                decay=Decay.exponential(5.0),
            )


class TestRaysLinesPolygons:
    """Tests for rays, full lines and polygons."""

    def test_ray(self, quad_spec):
        """Test an exponential integrand on a ray."""
        result = integrate_ray(
            lambda zeta: np.exp(1j * zeta), 0j, 1j, quad_spec, decay=Decay.exponential(1.0)
        )
        assert result.value == pytest.approx(1j, abs=1e-9)

    def test_line(self, quad_spec):
        """Test the integral of 1/(1+x^2) over the real line."""
        result = integrate_line(
            lambda zeta: 1.0 / (1.0 + zeta**2),
            LineSpec(0j, 1.0 + 0j),
            quad_spec,
            decay=Decay.algebraic(2.0),
        )
        assert result.value == pytest.approx(np.pi, abs=1e-9)

    def test_polygon(self, quad_spec):
        """Test the winding integral around a square."""
        square = [1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j, 1 + 1j]
        result = integrate_polygon(lambda zeta: 1.0 / zeta, square, quad_spec)
        assert result.value == pytest.approx(2j * np.pi, abs=1e-10)
        perimeter = integrate_polygon(lambda zeta: 1.0, square, quad_spec, arc_length=True)
        assert perimeter.value.real == pytest.approx(8.0)


class TestLpNorms:
    """Tests for L^p norms on contours and lines."""

    def test_contour_norm(self, geometry, quad_spec, pole_factory):
        """Test the L^2 norm of a pole trace against the closed form."""
        F = pole_factory(w0=2.0).boundary(geometry)
        value = lp_norm_on_contour(F, 2.0, geometry.boundary, quad_spec)
        assert value == pytest.approx(np.sqrt(POLE_TWO_L2_SQUARED), rel=1e-8)

    def test_contour_norm_mpmath(self, geometry, quad_spec):
        """Test an L^3 norm on a shifted contour against mpmath."""
        c = ContourSpec(0.5, 0.25)
        w0 = mpmath.mpc(0, -1)

        def density(z):
            return abs(z - w0) ** -3

        s, t = mpmath.mpf("0.5"), mpmath.mpf("0.25")
        exact = (
            mpmath.quad(lambda v: density(mpmath.mpc(-s, t + v)), [0, mpmath.inf])
            + mpmath.quad(lambda x: density(mpmath.mpc(x, t)), [-s, s])
            + mpmath.quad(lambda v: density(mpmath.mpc(s, t + v)), [0, mpmath.inf])
        ) ** (mpmath.mpf(1) / 3)
        value = lp_norm_on_contour(
            lambda zeta: 1.0 / (zeta + 1j), 3.0, c, quad_spec, decay=Decay.algebraic(1.0)
        )
        assert value == pytest.approx(float(exact), rel=1e-8)

    def test_full_output(self, geometry, quad_spec):
        """Test full_output returns the quadrature record."""
        value, record = lp_norm_on_contour(
            lambda zeta: 1.0 / (zeta - 2.0),
            2.0,
            geometry.boundary,
            quad_spec,
            decay=Decay.algebraic(1.0),
            full_output=True,
        )
        assert value**2 == pytest.approx(record.value.real)
        assert record.metadata["quasi_norm"] is False

    def test_quasi_norm_flag(self, geometry, quad_spec):
        """Test p < 1 is flagged as a quasi-norm."""
        record = contour_lp_integral(
            lambda zeta: (zeta - 2.0) ** -4,
            0.5,
            geometry.boundary,
            quad_spec,
            decay=Decay.algebraic(4.0),
        )
        assert record.metadata["quasi_norm"] is True

    def test_not_integrable(self, geometry, quad_spec):
        """Test |F|^p with too slow decay raises TruncationError."""
        with pytest.raises(TruncationError):
            contour_lp_integral(
                lambda zeta: 1.0 / (zeta - 2.0),
                0.5,
                geometry.boundary,
                quad_spec,
                decay=Decay.algebraic(1.0),
            )

    def test_invalid_exponent(self, geometry):
        """Test non-positive p is rejected."""
        with pytest.raises(DomainError):
            contour_lp_integral(lambda zeta: 1.0, 0.0, geometry.boundary)

    def test_line_norm(self, quad_spec):
        """Test the L^2 norm of 1/(x - i) on the real line is sqrt(pi)."""
        value = lp_norm_on_line(
            lambda zeta: 1.0 / (zeta - 1j),
            2.0,
            LineSpec(0j, 1.0 + 0j),
            quad_spec,
            decay=Decay.algebraic(1.0),
        )
        assert value == pytest.approx(np.sqrt(np.pi), rel=1e-8)

    def test_sup_norm(self, geometry):
        """Test p = inf takes the maximum modulus over rule nodes."""
        value = lp_norm_on_contour(lambda zeta: 1.0 / (zeta - 2.0), np.inf, geometry.boundary)
        assert value == pytest.approx(1.0, rel=1e-3)


class TestContourRule:
    """Tests for fixed composite rules."""

    def test_rule_norm(self, geometry):
        """Test the rule norm agrees with the adaptive norm."""
        rule = contour_rule(geometry.boundary)
        values = 1.0 / (rule.nodes - 2.0)
        assert rule_lp_norm(values, rule, 2.0) == pytest.approx(
            np.sqrt(POLE_TWO_L2_SQUARED), rel=1e-6
        )

    def test_rule_integrates(self, geometry):
        """Test the rule reproduces a residue integral."""
        rule = contour_rule(geometry.boundary)
        values = 1.0 / ((rule.nodes - 0.5j) * (rule.nodes - 2.0))
        assert rule.integrate(values) == pytest.approx(2j * np.pi / (0.5j - 2.0), abs=1e-5)

    def test_nodes_avoid_corners(self, geometry):
        """Test no node sits on a corner."""
        rule = contour_rule(geometry.boundary)
        assert rule.size > 0
        assert np.min(np.abs(rule.nodes - 1.0)) > 0
        assert np.min(np.abs(rule.nodes + 1.0)) > 0

    def test_line_rule(self):
        """Test a line rule on the real line."""
        rule = line_rule(LineSpec(0j, 1.0 + 0j))
        values = 1.0 / (rule.nodes - 1j)
        assert rule_lp_norm(values, rule, 2.0) == pytest.approx(np.sqrt(np.pi), rel=1e-6)

    def test_non_integrable_tail(self, geometry):
        """Test a fitted tail that does not decay is reported."""
        rule = contour_rule(geometry.boundary)
        with pytest.raises(TruncationError):
            rule_lp_norm(np.ones(rule.size), rule, 2.0)
