"""
Conformal map tests for halfstrip.
"""

import mpmath
import numpy as np
import pytest

from halfstrip.conformal import (
    branch_sqrt,
    branched_map,
    conformal_kernel_bound_check,
    derivative_sign_report,
    kernel_bound_constant,
    phi_minus,
    phi_minus_prime,
    phi_plus,
    phi_plus_prime,
    psi_minus,
    psi_minus_prime,
    psi_plus,
    schwarz_christoffel_quadrature,
    transform_T,
    transform_T_inv,
    transformed_line_norm,
    transformed_norm_estimate,
)
from halfstrip.exceptions import DomainError, SingularityError
from halfstrip.functions import ExpW, Pole
from halfstrip.geometry import Domain, Region, Side, StripGeometry, classify

UPPER_SAMPLES = [0.5j, 0.3 + 0.2j, -2 + 1j, 5 + 0.01j, -0.9 + 3j, 40 + 40j]
LOWER_SAMPLES = [-0.5j, 0.3 - 0.2j, -2 - 1j, 5 - 0.01j, -0.9 - 3j, 20 - 20j]


class TestPhiPlus:
    """Tests for Phi+ and Psi+."""

    def test_normalization(self):
        """Test Phi+(0) = 0 and Phi+(+-1) = +-sigma."""
        assert phi_plus(0.0) == pytest.approx(0.0)
        assert phi_plus(1.0, 2.0) == pytest.approx(2.0)
        assert phi_plus(-1.0, 2.0) == pytest.approx(-2.0)

    @pytest.mark.parametrize("z", UPPER_SAMPLES)
    def test_against_mpmath(self, z):
        """Test Phi+ against the principal arcsine off the real axis."""
        expected = complex(2 / mpmath.pi * mpmath.asin(mpmath.mpc(z.real, z.imag)))
        assert phi_plus(z) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("z", UPPER_SAMPLES)
    def test_image_and_inverse(self, geometry, z):
        """Test Phi+ maps C+ into Omega+ and Psi+ inverts it."""
        w = phi_plus(z)
        assert classify(w, geometry) is Region.OMEGA_PLUS
        assert psi_plus(w) == pytest.approx(z, rel=1e-10)

    def test_boundary(self, geometry):
        """Test the real axis lands on Gamma, leg by leg."""
        assert classify(phi_plus(2.0), geometry) is Region.GAMMA3
        assert classify(phi_plus(-2.0), geometry) is Region.GAMMA1
        assert classify(phi_plus(0.5), geometry) is Region.GAMMA2
        assert phi_plus(2.0).imag == pytest.approx(2 / np.pi * np.arccosh(2.0))

    def test_derivative(self):
        """Test Phi+' against a difference quotient and at the branch points."""
        z, h = 0.3 + 0.4j, 1e-6
        quotient = (phi_plus(z + h) - phi_plus(z - h)) / (2 * h)
        assert phi_plus_prime(z) == pytest.approx(quotient, rel=1e-7)
        with pytest.raises(SingularityError):
            phi_plus_prime(1.0)

    def test_lower_halfplane_refused(self):
        """Test Phi+ is only defined on the closed upper half-plane."""
        with pytest.raises(DomainError):
            phi_plus(-1j)

    def test_vectorised(self):
        """Test arrays keep their shape."""
        z = np.array(UPPER_SAMPLES)
        assert phi_plus(z).shape == z.shape
        assert psi_plus(phi_plus(z)) == pytest.approx(z, rel=1e-10)


class TestPhiMinus:
    """Tests for Phi- and Psi-."""

    def test_normalization(self):
        """Test Phi-(0) = 0 and Phi-(+-1) = +-sigma."""
        assert phi_minus(0.0) == pytest.approx(0.0)
        assert phi_minus(1.0) == pytest.approx(1.0)
        assert phi_minus(-1.0, 3.0) == pytest.approx(-3.0)

    @pytest.mark.parametrize("z", LOWER_SAMPLES)
    def test_image(self, geometry, z):
        """Test Phi- maps C- into Omega-."""
        assert classify(phi_minus(z), geometry) is Region.OMEGA_MINUS

    @pytest.mark.parametrize("z", [-0.5j, 0.3 - 0.2j, -2 - 1j, 2 - 0.5j])
    def test_schwarz_christoffel_integral(self, z):
        """Test the closed form against quadrature of its defining integral."""
        assert phi_minus(z) == pytest.approx(
            schwarz_christoffel_quadrature(z, Side.MINUS), rel=1e-10, abs=1e-12
        )

    @pytest.mark.parametrize("z", LOWER_SAMPLES)
    def test_inverse(self, z):
        """Test Psi- inverts Phi-."""
        assert psi_minus(phi_minus(z)) == pytest.approx(z, rel=1e-9, abs=1e-12)

    def test_inverse_on_gamma(self):
        """Test Psi- carries Gamma back to the real axis."""
        for w in (0.3, -1 + 2j, 1 + 0.5j):
            z = psi_minus(w)
            assert abs(z.imag) < 1e-9
            assert phi_minus(complex(z.real, -0.0)) == pytest.approx(w, abs=1e-9)

    def test_inverse_fixed_points(self):
        """Test Psi-(0) = 0 and Psi-(+-sigma) = +-1."""
        assert psi_minus(0.0) == 0
        assert psi_minus(1.0) == pytest.approx(1.0)
        assert psi_minus(-2.0, 2.0) == pytest.approx(-1.0)

    def test_inverse_domain(self):
        """Test Psi- refuses points of Omega+."""
        with pytest.raises(DomainError):
            psi_minus(0.5j)

    def test_derivatives(self):
        """Test Psi-' = 1 / Phi-'(Psi-) and the corner singularity."""
        w = 2 - 1j
        assert psi_minus_prime(w) * phi_minus_prime(psi_minus(w)) == pytest.approx(1.0)
        with pytest.raises(SingularityError):
            psi_minus_prime(1.0)

    def test_plus_quadrature(self):
        """Test Phi+ against its defining integral."""
        z = 0.7 + 0.9j
        assert phi_plus(z) == pytest.approx(schwarz_christoffel_quadrature(z), rel=1e-10)


class TestBranches:
    """Tests for the branch of sqrt(1 - z^2)."""

    def test_real_axis_limits(self):
        """Test the two sides of the cut beyond +-1."""
        assert branch_sqrt(2.0, Side.PLUS) == pytest.approx(-1j * np.sqrt(3.0))
        assert branch_sqrt(2.0, Side.MINUS) == pytest.approx(1j * np.sqrt(3.0))
        assert branch_sqrt(0.0) == pytest.approx(1.0)

    def test_large_arguments(self):
        """Test large |z| does not overflow."""
        value = branch_sqrt(1e200 + 1e200j)
        assert np.isfinite(value)

    def test_branched_map(self, geometry):
        """Test the bundled maps and their domains."""
        plus = branched_map(Side.PLUS, geometry)
        minus = branched_map(Side.MINUS, geometry)
        assert plus.source is Domain.UPPER and plus.target is Domain.OMEGA_PLUS
        assert minus.source is Domain.LOWER and minus.target is Domain.OMEGA_MINUS
        assert minus.inverse(minus.forward(-1 - 1j)) == pytest.approx(-1 - 1j)


class TestSigns:
    """Tests for the sign pattern of the derivatives."""

    def test_sign_pattern(self):
        """Test Re Phi' > 0 and x Im Phi' > 0 on both half-planes."""
        samples = UPPER_SAMPLES + LOWER_SAMPLES + [2j, -3j, 1.5]
        report = derivative_sign_report(samples)
        assert report.passed
        assert report.checked == len(samples) - 1
        assert report.skipped == 1
        assert report.max_axis_imag <= 1e-12


class TestIsomorphism:
    """Tests for the transform T and its inverse."""

    def test_round_trip(self, geometry):
        """Test T^-1 T F = F on Omega+."""
        F = Pole(2.0).analytic(Domain.OMEGA_PLUS, geometry)
        back = transform_T_inv(transform_T(F, 2.0), 2.0)
        for w in (0.3 + 0.7j, -0.5 + 2j):
            assert back(w) == pytest.approx(F(w), rel=1e-10)
        assert back.domain is Domain.OMEGA_PLUS

    def test_round_trip_minus(self, geometry):
        """Test T^-1 T G = G on Omega-."""
        G = Pole(0.5j).analytic(Domain.OMEGA_MINUS, geometry)
        T = transform_T(G, 1.5)
        assert T.domain is Domain.LOWER
        back = transform_T_inv(T, 1.5)
        assert back(2 - 1j) == pytest.approx(G(2 - 1j), rel=1e-8)

    def test_line_norm_limit(self, geometry, quad_spec):
        """Test line norms of T F approach the boundary norm of F."""
        F = ExpW(1.0).analytic(Domain.OMEGA_PLUS, geometry)
        value = transformed_line_norm(F, 2.0, 1e-4, q=quad_spec)
        assert value == pytest.approx(np.sqrt(3.0), rel=1e-2)

    @pytest.mark.slow
    def test_norm_estimate(self, geometry, quad_spec):
        """Test the H^p(C+) norm of T F against the H^p(Omega+) norm of F."""
        F = ExpW(1.0).analytic(Domain.OMEGA_PLUS, geometry)
        value = transformed_norm_estimate(F, 2.0, q=quad_spec)
        assert value == pytest.approx(np.sqrt(3.0), rel=1e-2)

    def test_wrong_height(self, geometry):
        """Test lines must lie inside the half-plane of the side."""
        F = ExpW(1.0).analytic(Domain.OMEGA_PLUS, geometry)
        with pytest.raises(DomainError):
            transformed_line_norm(F, 2.0, -0.5)
        with pytest.raises(DomainError):
            transform_T(F, 0.0)


class TestKernelBound:
    """Tests for the restricted kernel integrals."""

    def test_constant(self):
        """Test the closed-form bound."""
        assert kernel_bound_constant(1.0, 2.0) == pytest.approx(24.0)
        assert kernel_bound_constant(0.5, 3.0) == pytest.approx(3 * 16 / (2 * 0.25))

    def test_bound_holds(self):
        """Test the restricted integrals stay below the bound."""
        report = conformal_kernel_bound_check(0.3 + 1j, 0.25, 2.0, [1.0, 0.25])
        assert report.violations == 0
        assert 0 < report.max_ratio <= 1.0
        assert len(report.integrals) == 2

    def test_minus_side(self):
        """Test the minus side uses negative heights."""
        report = conformal_kernel_bound_check(2 - 1j, 0.5, 2.0, [-0.5], side=Side.MINUS)
        assert report.violations == 0
        with pytest.raises(DomainError):
            conformal_kernel_bound_check(2 - 1j, 0.5, 2.0, [0.5], side=Side.MINUS)

    def test_invalid(self):
        """Test eps and q are validated."""
        with pytest.raises(DomainError):
            conformal_kernel_bound_check(0.5j, 0.0, 2.0, [1.0])
        with pytest.raises(DomainError):
            conformal_kernel_bound_check(0.5j, 0.5, 1.0, [1.0])

    def test_geometry_scale(self):
        """Test maps scale with sigma."""
        wide = StripGeometry(2.0)
        assert classify(phi_plus(0.5j, wide.sigma), wide) is Region.OMEGA_PLUS
