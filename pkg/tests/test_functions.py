"""
Closed-form expression tests for halfstrip.
"""

import numpy as np
import pytest

from halfstrip.cauchy import AnalyticFunction, BoundaryFunction
from halfstrip.exceptions import ContractError, DomainError
from halfstrip.functions import Const, ExpW, Pole, Product, Scale, Sum
from halfstrip.geometry import Domain, Side


class TestEvaluation:
    """Tests for evaluating expressions."""

    def test_arithmetic(self):
        """Test sums, products, scalars and powers evaluate pointwise."""
        w = np.array([0.5j, 3 + 1j, -2 - 2j])
        expr = 2 * Pole(2.0) - ExpW(1.0) * Pole(-2.0) + 1
        expected = 2 / (w - 2.0) - np.exp(1j * w) / (w + 2.0) + 1
        assert expr(w) == pytest.approx(expected)
        assert (Pole(2.0) ** 3)(0.5j) == pytest.approx((0.5j - 2.0) ** -3)
        assert (-Pole(1j))(2.0) == pytest.approx(-1.0 / (2.0 - 1j))

    def test_scalar_results(self):
        """Test scalar inputs give scalar outputs."""
        assert isinstance(Const(2.0)(1j), complex)
        assert isinstance(Sum((Pole(2.0), ExpW(1.0)))(1j), complex)
        assert Sum(())(1j) == 0

    def test_invalid_powers(self):
        """Test only positive integer powers and orders are allowed."""
        with pytest.raises(DomainError):
            Pole(2.0) ** 0
        with pytest.raises(DomainError):
            Pole(2.0, 0)

    def test_str(self):
        """Test the readable form."""
        assert str(Pole(2.0)) == "pole(2)"
        assert str(Pole(2.0, 2)) == "pole(2,2)"
        assert str(ExpW(0.5)) == "expw(0.5)"
        assert str(Sum(())) == "0"


class TestDecayAndClasses:
    """Tests for decay data, p_min and the Hardy side."""

    def test_decay(self):
        """Test decay classes of the building blocks."""
        assert Pole(2.0, 3).decay().rate == 3.0
        assert ExpW(2.0).decay().kind == "exponential"
        assert Const(0.0).decay().is_zero
        assert Scale(3.0, Const(2.0)).decay().scale == pytest.approx(6.0)
        assert Product((Pole(2.0), Pole(-2.0))).decay().rate == 2.0

    def test_p_min(self):
        """Test the L^p threshold of each family."""
        assert Pole(2.0).p_min() == 1.0
        assert (Pole(2.0) * Pole(-2.0)).p_min() == 0.5
        assert ExpW(1.0).p_min() == 0.0
        assert (ExpW(1.0) * Pole(2.0)).p_min() == 0.0
        assert Const(1.0).p_min() == np.inf

    @pytest.mark.parametrize(
        "expr, side",
        [
            (Pole(2.0), Side.PLUS),
            (Pole(-0.5j), Side.PLUS),
            (ExpW(1.0), Side.PLUS),
            (Pole(0.5j), Side.MINUS),
            (Pole(0.3 + 1.2j, 2), Side.MINUS),
            (Pole(0.5j) + ExpW(1.0), None),
            (Pole(0.5), None),
            (ExpW(-1.0), None),
            (Const(1.0), None),
        ],
    )
    def test_side(self, geometry, expr, side):
        """Test which Hardy space holds each expression."""
        assert expr.side(geometry) is side

    def test_split(self, geometry):
        """Test a mixed sum splits term by term."""
        plus, minus = (Pole(2.0) + Pole(0.5j) + ExpW(1.0)).split(geometry)
        assert plus(0.2 + 1j) == pytest.approx(1 / (0.2 + 1j - 2.0) + np.exp(1j * (0.2 + 1j)))
        assert minus(3.0) == pytest.approx(1 / (3.0 - 0.5j))

    def test_split_rejects(self, geometry):
        """Test a term belonging to neither side is refused."""
        with pytest.raises(ContractError):
            (Pole(2.0) + Const(1.0)).split(geometry)


class TestHandles:
    """Tests for analytic and boundary handles built from expressions."""

    def test_analytic(self, geometry):
        """Test the analytic handle carries the domain and decay."""
        F = Pole(2.0).analytic(Domain.OMEGA_PLUS, geometry)
        assert isinstance(F, AnalyticFunction)
        assert F.decay.rate == 1.0
        assert F.name == "pole(2)"

    def test_boundary(self, geometry):
        """Test the boundary trace records its L^p class."""
        F = (Pole(2.0) ** 2).boundary(geometry, name="square")
        assert isinstance(F, BoundaryFunction)
        assert F.p_class == (0.5, np.inf)
        assert F.name == "square"
