"""
Closed-form function expressions.

A small algebra of rational poles, exponentials e^{i lambda w}, constants,
sums, products and scalar multiples.  Expressions evaluate on numpy arrays,
know their decay along the contour rays and their poles, and can be wrapped
as AnalyticFunction or BoundaryFunction handles.  The test corpus and the
CLI function mini-language both build on it.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractError, DomainError
from .geometry import Domain, Region, Side, StripGeometry, classify
from .quadrature import Decay

logger = logging.getLogger(__name__)


class Expr:
    """Base class for closed-form expressions in w."""

    def __call__(self, w):
        raise NotImplementedError

    def decay(self) -> Decay:
        raise NotImplementedError

    def poles(self) -> list[tuple[complex, int]]:
        return []

    def exponential_rates(self) -> list[float]:
        return []

    def __add__(self, other):
        return Sum((self, as_expr(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Sum((self, Scale(-1.0, as_expr(other))))

    def __rsub__(self, other):
        return Sum((as_expr(other), Scale(-1.0, self)))

    def __neg__(self):
        return Scale(-1.0, self)

    def __mul__(self, other):
        if isinstance(other, Expr):
            return Product((self, other))
        return Scale(complex(other), self)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise DomainError(f"only positive integer powers are supported, got {n!r}")
        return Product(tuple([self] * n))

    def p_min(self) -> float:
        """
        Infimum of the exponents p for which the expression is in L^p of the contour.

        Algebraic decay of rate k gives 1/k; pure exponential decay gives 0.
        """
        decay = self.decay()
        if decay.is_zero or decay.kind == "exponential":
            return 0.0
        if decay.rate == 0:
            return np.inf
        return 1.0 / decay.rate

    def side(self, geometry: StripGeometry) -> Side | None:
        """
        The half-strip whose Hardy spaces contain this expression, if any.

        Plus: every pole lies in Omega- and exponentials have lambda > 0.
        Minus: every pole lies in Omega+ and there are no exponentials.
        """
        if self.p_min() == np.inf:
            return None
        regions = {classify(w0, geometry) for w0, _k in self.poles()}
        if any(region.is_boundary for region in regions):
            return None
        rates = self.exponential_rates()
        if regions <= {Region.OMEGA_MINUS} and all(rate > 0 for rate in rates):
            return Side.PLUS
        if regions <= {Region.OMEGA_PLUS} and not rates:
            return Side.MINUS
        return None

    def split(self, geometry: StripGeometry) -> tuple["Expr", "Expr"]:
        """
        Split a sum into its Omega+ part and its Omega- part, term by term.

        Raises:
            ContractError: A term belongs to neither side
        """
        plus, minus = [], []
        for term in _flatten(self):
            side = term.side(geometry)
            if side is Side.PLUS:
                plus.append(term)
            elif side is Side.MINUS:
                minus.append(term)
            else:
                raise ContractError(f"term {term} belongs to neither Hardy space")
        return Sum(tuple(plus)), Sum(tuple(minus))

    def analytic(self, domain: Domain, geometry: StripGeometry, name: str | None = None):
        from .cauchy import AnalyticFunction

        return AnalyticFunction(
            self, Domain(domain), geometry, decay=self.decay(), name=name or str(self)
        )

    def boundary(self, geometry: StripGeometry, name: str | None = None):
        from .cauchy import BoundaryFunction

        singular = [w0 for w0, _k in self.poles() if classify(w0, geometry).is_boundary]
        if singular:
            raise DomainError(f"{self} has poles on Gamma at {singular}")
        return BoundaryFunction(
            self,
            geometry,
            decay=self.decay(),
            p_class=(self.p_min(), np.inf),
            name=name or str(self),
        )


def _flatten(expr: Expr) -> list[Expr]:
    """Top-level summands, with nested sums and scaled sums expanded."""
    if isinstance(expr, Sum):
        return [term for inner in expr.terms for term in _flatten(inner)]
    if isinstance(expr, Scale) and isinstance(expr.expr, Sum):
        return [Scale(expr.factor, term) for term in _flatten(expr.expr)]
    return [expr]


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(complex(value))


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: complex

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        return np.full(w.shape, self.value, dtype=complex) if w.ndim else complex(self.value)

    def decay(self) -> Decay:
        if self.value == 0:
            return Decay.zero()
        return Decay.algebraic(0.0, abs(self.value))

    def __str__(self):
        return f"{self.value:g}"


@dataclass(frozen=True, eq=False)
class Pole(Expr):
    """(w - w0)^(-order)."""

    w0: complex
    order: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"pole order must be >= 1, got {self.order}")

    def __call__(self, w):
        return (np.asarray(w, dtype=complex) - self.w0) ** (-self.order)

    def decay(self) -> Decay:
        return Decay.algebraic(float(self.order))

    def poles(self):
        return [(complex(self.w0), self.order)]

    def __str__(self):
        if self.order == 1:
            return f"pole({self.w0:g})"
        return f"pole({self.w0:g},{self.order})"


@dataclass(frozen=True, eq=False)
class ExpW(Expr):
    """e^{i lambda w}."""

    lam: float

    def __call__(self, w):
        return np.exp(1j * self.lam * np.asarray(w, dtype=complex))

    def decay(self) -> Decay:
        if self.lam <= 0:
            return Decay.algebraic(0.0)
        return Decay.exponential(float(self.lam))

    def exponential_rates(self):
        return [float(self.lam)]

    def __str__(self):
        return f"expw({self.lam:g})"


@dataclass(frozen=True, eq=False)
class Scale(Expr):
    factor: complex
    expr: Expr

    def __call__(self, w):
        return self.factor * self.expr(w)

    def decay(self) -> Decay:
        if self.factor == 0:
            return Decay.zero()
        inner = self.expr.decay()
        scale = None if inner.scale is None else inner.scale * abs(self.factor)
        return Decay(inner.kind, inner.rate, scale)

    def poles(self):
        return [] if self.factor == 0 else self.expr.poles()

    def exponential_rates(self):
        return self.expr.exponential_rates()

    def __str__(self):
        return f"scale({self.factor:g},{self.expr})"


@dataclass(frozen=True, eq=False)
class Sum(Expr):
    terms: tuple

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        total = np.zeros(w.shape, dtype=complex)
        for term in self.terms:
            total = total + term(w)
        return total if w.ndim else complex(total)

    def decay(self) -> Decay:
        result = Decay.zero()
        for term in self.terms:
            result = result.plus(term.decay())
        return result

    def poles(self):
        return [pole for term in self.terms for pole in term.poles()]

    def exponential_rates(self):
        return [rate for term in self.terms for rate in term.exponential_rates()]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(term) for term in self.terms)


@dataclass(frozen=True, eq=False)
class Product(Expr):
    factors: tuple

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        total = np.ones(w.shape, dtype=complex)
        for factor in self.factors:
            total = total * factor(w)
        return total if w.ndim else complex(total)

    def decay(self) -> Decay:
        result = Decay.algebraic(0.0, 1.0)
        for factor in self.factors:
            result = result.times(factor.decay())
        return result

    def poles(self):
        merged: dict[complex, int] = {}
        for factor in self.factors:
            for w0, order in factor.poles():
                merged[w0] = merged.get(w0, 0) + order
        return list(merged.items())

    def exponential_rates(self):
        rates = [rate for factor in self.factors for rate in factor.exponential_rates()]
        return [sum(rates)] if rates else []

    def __str__(self):
        return " * ".join(f"({factor})" for factor in self.factors)
