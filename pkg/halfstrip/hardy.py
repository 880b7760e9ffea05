"""
Hardy-space norms on the half-strip.

The H^p(Omega+) norm of F is the supremum of m(s,t,F), the L^p norm of F on
Gamma_{s,t}, over 0 < s < sigma and t > 0; for Omega- the family runs over
s > sigma and t < 0.  The supremum is estimated on a geometric grid that
approaches the corner of the (s, t) family, and the refinement trend is
reported so that divergence can be told apart from convergence.

Also here: pointwise growth bounds, the explicit constants, the Laplace
transform bound on L^2(R+), half-plane norms, and the corpus of exactly
representable test functions.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .exceptions import DomainError
from .functions import Const, Expr, ExpW, Pole
from .geometry import (
    ContourSpec,
    Domain,
    Side,
    StripGeometry,
    exhaustion_curve,
    halfplane_line,
)
from .quadrature import (
    Decay,
    QuadratureSpec,
    contour_lp_integral,
    contour_rule,
    integrate_polygon,
    integrate_ray,
    lp_norm_on_contour,
    lp_norm_on_line,
    rule_lp_norm,
)
from .settings import halfstrip_settings
from .tasks import run_tasks

logger = logging.getLogger(__name__)

CONVERGING = "converging"
DIVERGING = "diverging"
FLAT = "flat"

ADAPTIVE = "adaptive"
RULE = "rule"


@dataclass(frozen=True)
class GridSpec:
    """
    Contours used to estimate the supremum defining the H^p norm.

    Plus side: s = sigma(1 - 2^-e), t = 2^-e.  Minus side: s = sigma(1 + 2^-e),
    t = -2^-e, followed by wide strips s = sigma * f at the smallest |t|.
    The exponent e runs from 1 to depth in steps of 1/substeps.
    """

    depth: int = field(default_factory=lambda: halfstrip_settings.GRID_DEPTH)
    substeps: int = 1
    wide_factors: tuple = (2.0, 4.0, 8.0, 16.0)

    def __post_init__(self):
        if self.depth < 1:
            raise DomainError(f"grid depth must be at least 1, got {self.depth}")
        if self.substeps < 1:
            raise DomainError(f"grid substeps must be at least 1, got {self.substeps}")

    @property
    def exponents(self) -> np.ndarray:
        count = (self.depth - 1) * self.substeps + 1
        return np.linspace(1.0, float(self.depth), count)

    def chain(self, side: Side, sigma: float) -> list[ContourSpec]:
        """The corner-approaching contours, in refinement order."""
        h = 2.0 ** -self.exponents
        if Side(side) is Side.PLUS:
            return [ContourSpec(sigma * (1.0 - x), x) for x in h]
        return [ContourSpec(sigma * (1.0 + x), -x) for x in h]

    def wide(self, side: Side, sigma: float) -> list[ContourSpec]:
        if Side(side) is Side.PLUS:
            return []
        t = -(2.0 ** -float(self.depth))
        return [ContourSpec(sigma * f, t) for f in self.wide_factors]

    def contours(self, side: Side, sigma: float) -> list[ContourSpec]:
        return self.chain(side, sigma) + self.wide(side, sigma)


@dataclass
class HpNormEstimate:
    """Grid estimate of an H^p(Omega+-) norm; a lower bound by construction."""

    p: float
    side: Side
    value: float
    grid: list
    refinement_trend: str
    error_estimate: float = 0.0
    metadata: dict = field(default_factory=dict)

    @property
    def diverging(self) -> bool:
        return self.refinement_trend == DIVERGING


def _side_for(F, side) -> Side:
    if side is not None:
        return Side(side)
    domain = getattr(F, "domain", None)
    if domain is Domain.OMEGA_MINUS:
        return Side.MINUS
    return Side.PLUS


def _check_p(p: float) -> float:
    p = float(p)
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    return p


def trend_of(values: Sequence[float]) -> str:
    """
    Classify a refinement sequence.

    Diverging when each of the last four increments is positive and at least
    0.9 times the previous one.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return FLAT
    increments = np.diff(values)
    scale = max(float(np.max(np.abs(values))), 1e-300)
    if np.all(np.abs(increments) <= 1e-12 * scale):
        return FLAT
    if increments.size >= 4:
        last = increments[-4:]
        if np.all(last[:-1] > 0) and np.all(last[1:] >= 0.9 * last[:-1]):
            return DIVERGING
    return CONVERGING


def contour_norm(
    F: Callable,
    p: float,
    c: ContourSpec,
    q: QuadratureSpec | None = None,
    *,
    method: str = ADAPTIVE,
    decay: Decay | None = None,
) -> tuple[float, float]:
    """
    m(s,t,F) on one contour with an error estimate.

    Returns:
        (value, error estimate)
    """
    if method == RULE or p == np.inf:
        rule = contour_rule(c)
        values = np.asarray(F(rule.nodes), dtype=complex)
        return rule_lp_norm(values, rule, p), 0.0
    if method != ADAPTIVE:
        raise DomainError(f"unknown norm method {method!r}")
    value, result = lp_norm_on_contour(F, p, c, q, decay=decay, full_output=True)
    integral = max(float(np.real(result.value)), 0.0)
    if integral > 0:
        error = value * result.error_estimate / (p * integral)
    else:
        error = result.error_estimate ** (1.0 / p)
    return value, float(error)


def hp_norm_estimate(
    F,
    p: float,
    side: Side | None = None,
    grid: GridSpec | None = None,
    q: QuadratureSpec | None = None,
    *,
    method: str = ADAPTIVE,
    threads: int | None = None,
) -> HpNormEstimate:
    """
    Estimate ||F||_{H^p(Omega+-)} as the grid supremum of m(s,t,F).

    Args:
        F: AnalyticFunction on Omega+ or Omega-
        p: Exponent in (0, inf]
        side: plus or minus; taken from the domain of F when omitted
        grid: Contour grid (settings depth by default)
        q: Quadrature tolerances
        method: "adaptive" (Gauss-Kronrod per contour) or "rule" (fixed graded rule)
        threads: Worker cap for independent contours

    Returns:
        HpNormEstimate; divergence along the grid is reported in
        refinement_trend and logged, never raised
    """
    p = _check_p(p)
    side = _side_for(F, side)
    grid = grid or GridSpec()
    sigma = F.geometry.sigma
    chain = grid.chain(side, sigma)
    contours = chain + grid.wide(side, sigma)
    decay = getattr(F, "decay", None)

    def measure(c):
        return contour_norm(F, p, c, q, method=method, decay=decay)

    results = run_tasks(measure, contours, threads)
    values = [value for value, _error in results]
    errors = [error for _value, error in results]
    trend = trend_of(values[: len(chain)])
    best = int(np.argmax(values)) if values else 0
    if trend == DIVERGING:
        logger.warning(
            f"m(s,t,F) keeps growing along the {side.value} grid for p={p}: "
            f"evidence that F is not in H^p"
        )
    return HpNormEstimate(
        p=p,
        side=side,
        value=float(values[best]) if values else 0.0,
        grid=[(c.s, c.t, v) for c, v in zip(contours, values, strict=True)],
        refinement_trend=trend,
        error_estimate=float(errors[best]) if errors else 0.0,
        metadata={"method": method, "contours": len(contours)},
    )


def vertical_decay_profile(
    F, p: float, s: float, heights: Sequence[float], q: QuadratureSpec | None = None
) -> list[float]:
    """m(s,t,F) along a ladder of heights t for fixed s < sigma."""
    p = _check_p(p)
    if not 0 < s < F.geometry.sigma:
        raise DomainError(f"s must lie in (0, sigma), got {s}")
    decay = getattr(F, "decay", None)
    return [contour_norm(F, p, ContourSpec(s, t), q, decay=decay)[0] for t in heights]


def pointwise_radius(w: complex, side: Side, sigma: float) -> float:
    """
    rho(w) in the pointwise bound |F(w)| <= C_p ||F|| rho(w)^(-1/p).

    Plus: min(sigma - |u|, v).  Minus: |u| - sigma when |u| > sigma, |v| when
    v < 0, the larger one when both apply.
    """
    u, v = w.real, w.imag
    if Side(side) is Side.PLUS:
        if not (abs(u) < sigma and v > 0):
            raise DomainError(f"sample {w} is not in Omega+")
        return min(sigma - abs(u), v)
    candidates = []
    if abs(u) > sigma:
        candidates.append(abs(u) - sigma)
    if v < 0:
        candidates.append(-v)
    if not candidates:
        raise DomainError(f"sample {w} is not in Omega-")
    return max(candidates)


@dataclass
class PointwiseReport:
    samples: np.ndarray
    values: np.ndarray
    bounds: np.ndarray
    norm: float
    violations: int
    max_violation: float


def pointwise_bound_check(
    F,
    p: float,
    side: Side | None = None,
    samples: Sequence[complex] = (),
    *,
    norm: float | HpNormEstimate | None = None,
    grid: GridSpec | None = None,
    q: QuadratureSpec | None = None,
) -> PointwiseReport:
    """
    Check |F(w)| <= (2/pi)^(1/p) ||F||_{H^p} rho(w)^(-1/p) at every sample.

    The norm is estimated with hp_norm_estimate unless given.

    Raises:
        DomainError: A sample lies outside the region of the side
    """
    p = _check_p(p)
    side = _side_for(F, side)
    sigma = F.geometry.sigma
    samples = np.asarray(samples, dtype=complex).reshape(-1)
    radii = np.array([pointwise_radius(w, side, sigma) for w in samples])
    if norm is None:
        norm = hp_norm_estimate(F, p, side, grid, q)
    if isinstance(norm, HpNormEstimate):
        norm = norm.value
    constant = (2.0 / np.pi) ** (1.0 / p)
    values = np.abs(np.asarray(F(samples), dtype=complex)).reshape(-1)
    bounds = constant * norm * radii ** (-1.0 / p)
    excess = values - bounds
    return PointwiseReport(
        samples=samples,
        values=values,
        bounds=bounds,
        norm=float(norm),
        violations=int(np.sum(excess > 0)),
        max_violation=float(max(np.max(excess), 0.0)) if excess.size else 0.0,
    )


@dataclass(frozen=True)
class Constants:
    """The explicit constants attached to an exponent 1 < p < inf."""

    p: float
    A_p: float
    B_p: float
    beta_half: float
    five_halves_pow: float
    three_pow: float

    @property
    def plus_transform_bound(self) -> float:
        """Operator norm bound of the Cauchy transform into H^p(Omega+)."""
        return self.five_halves_pow * self.A_p

    @property
    def minus_transform_bound(self) -> float:
        return self.three_pow * self.A_p


def constants(p: float) -> Constants:
    """
    A_p = max(p/(p-1), p^(p-1))^(1/p), B_p = 3^(1/p) p/(p-1), B(1/2, (p-1)/2).

    Raises:
        DomainError: p outside (1, inf)
    """
    p = float(p)
    if not 1 < p < np.inf:
        raise DomainError(f"constants need 1 < p < inf, got {p}")
    a_p = max(p / (p - 1.0), p ** (p - 1.0)) ** (1.0 / p)
    beta_half = special.gamma(0.5) * special.gamma((p - 1.0) / 2.0) / special.gamma(p / 2.0)
    return Constants(
        p=p,
        A_p=float(a_p),
        B_p=float(3.0 ** (1.0 / p) * p / (p - 1.0)),
        beta_half=float(beta_half),
        five_halves_pow=float(2.5 ** (1.0 / p)),
        three_pow=float(3.0 ** (1.0 / p)),
    )


def _real_quad(func: Callable, breakpoints: Sequence[float]) -> float:
    """Integral of a real function over [0, inf), split at the breakpoints."""
    cuts = sorted({0.0, *[float(b) for b in breakpoints if b > 0]})
    total = 0.0
    for a, b in zip(cuts, cuts[1:] + [np.inf], strict=True):
        value, _error = integrate.quad(func, a, b, limit=200)
        total += value
    return total


def laplace_transform(f: Callable, y: float, breakpoints: Sequence[float] = ()) -> complex:
    """
    g(y) = integral over R+ of e^(-yt) f(t) dt.

    Args:
        f: Real or complex callable on [0, inf)
        y: Positive real
        breakpoints: Discontinuities of f

    Raises:
        DomainError: y <= 0
    """
    if not y > 0:
        raise DomainError(f"Laplace transform needs y > 0, got {y}")
    real = _real_quad(lambda t: np.exp(-y * t) * complex(f(t)).real, breakpoints)
    imag = _real_quad(lambda t: np.exp(-y * t) * complex(f(t)).imag, breakpoints)
    return complex(real, imag)


def laplace_bound_ratio(f: Callable, breakpoints: Sequence[float] = ()) -> float:
    """
    ||g||_{L^2(R+)} / ||f||_{L^2(R+)} for the Laplace transform g of f.

    Bounded by sqrt(pi).  Returns 0 for f = 0.
    """
    f_norm = np.sqrt(_real_quad(lambda t: abs(complex(f(t))) ** 2, breakpoints))
    if f_norm == 0:
        return 0.0

    def g_squared(y):
        return abs(laplace_transform(f, y, breakpoints)) ** 2

    g_norm = np.sqrt(_real_quad(g_squared, [1.0]))
    return float(g_norm / f_norm)


@dataclass
class TestFunction:
    """A closed-form member of H^p(Omega+) or H^p(Omega-) for every p > p_min."""

    __test__ = False

    name: str
    expr: Expr
    side: Side
    p_min: float
    family: str
    exact_norm: Callable[[float], float] | None = None

    def analytic(self, geometry: StripGeometry):
        return self.expr.analytic(Domain.for_side(self.side), geometry, name=self.name)

    def boundary(self, geometry: StripGeometry):
        return self.expr.boundary(geometry, name=self.name)

    def admits(self, p: float) -> bool:
        return p > self.p_min


def expw_norm(lam: float, p: float, sigma: float) -> float:
    """||e^(i lambda w)||_{H^p(Omega+)} = (2 sigma + 2/(p lambda))^(1/p)."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    return (2.0 * sigma + 2.0 / (p * lam)) ** (1.0 / p)


_PLUS_POLES = (
    2, -2, -0.5j, 3 + 1j, -1.5 + 2j, 1.5 + 0.5j, -1.2 - 0.3j, 0.4 - 0.8j, 2.5 - 1j, -3 + 0.2j
)
_MINUS_POLES = (0.5j, 0.3 + 1.2j, -0.6 + 0.4j, 2j, 0.8 + 3j)
_RATES = (0.5, 1.0, 2.0)


def test_corpus(geometry: StripGeometry | None = None) -> list[TestFunction]:
    """
    The exactly representable test functions.

    Simple poles in Omega- (plus side, p > 1), mirrored poles in Omega+
    (minus side, p > 1), exponentials e^(i lambda w) (plus side, every p > 0,
    with closed-form norms) and squares and products (p > 1/2).
    """
    geometry = geometry or StripGeometry()
    sigma = geometry.sigma
    corpus = []
    for w0 in _PLUS_POLES:
        expr = Pole(complex(w0) * sigma)
        corpus.append(TestFunction(str(expr), expr, Side.PLUS, 1.0, "rational"))
    for w0 in _MINUS_POLES:
        expr = Pole(complex(w0) * sigma)
        corpus.append(TestFunction(str(expr), expr, Side.MINUS, 1.0, "rational"))
    for lam in _RATES:
        expr = ExpW(lam)
        corpus.append(
            TestFunction(
                str(expr),
                expr,
                Side.PLUS,
                0.0,
                "exponential",
                exact_norm=lambda p, lam=lam: expw_norm(lam, p, sigma),
            )
        )
    powers = [
        (Pole(2.0 * sigma, 2), Side.PLUS),
        (Pole(2.0 * sigma) * Pole(-2.0 * sigma), Side.PLUS),
        (Pole(0.5j * sigma, 2), Side.MINUS),
    ]
    for expr, side in powers:
        corpus.append(TestFunction(str(expr), expr, side, 0.5, "power"))
    product = ExpW(1.0) * Pole(2.0 * sigma)
    corpus.append(TestFunction(str(product), product, Side.PLUS, 0.0, "product"))
    return corpus


test_corpus.__test__ = False


def zero_function(geometry: StripGeometry, side: Side = Side.PLUS):
    return Const(0.0).analytic(Domain.for_side(side), geometry, name="0")


def resolvent_bound(
    w0: complex, p: float, c: ContourSpec, q: QuadratureSpec | None = None
) -> tuple[float, float]:
    """
    The integral of |w - w0|^(-p) over Gamma_{s,t} and its closed-form bound.

    The bound is B(1/2,(p-1)/2) ((s+u0)^(1-p) + (v0-t)^(1-p) + (s-u0)^(1-p)).

    Raises:
        DomainError: w0 not in D_{s,t}, or p <= 1
    """
    w0 = complex(w0)
    u0, v0 = w0.real, w0.imag
    if not (abs(u0) < c.s and v0 > c.t):
        raise DomainError(f"{w0} is not inside D_(s={c.s}, t={c.t})")
    if not p > 1:
        raise DomainError(f"resolvent bound needs p > 1, got {p}")
    result = contour_lp_integral(Pole(w0), p, c, q, decay=Decay.algebraic(1.0, None))
    beta = special.beta(0.5, (p - 1.0) / 2.0)
    bound = beta * ((c.s + u0) ** (1 - p) + (v0 - c.t) ** (1 - p) + (c.s - u0) ** (1 - p))
    return float(np.real(result.value)), float(bound)


def halfplane_pole_norm(d: float, p: float) -> float:
    """
    ||1/(w - w0)||_{H^p} of a half-plane, for w0 at distance d outside it.

    Equals (B(1/2,(p-1)/2) d^(1-p))^(1/p).
    """
    if not d > 0:
        raise DomainError(f"distance must be positive, got {d}")
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    return float((special.beta(0.5, (p - 1.0) / 2.0) * d ** (1.0 - p)) ** (1.0 / p))


def halfplane_norm_estimate(
    F,
    p: float,
    domain: Domain,
    offsets: Sequence[float] | None = None,
    q: QuadratureSpec | None = None,
    *,
    decay: Decay | None = None,
) -> float:
    """
    Sup of the L^p norms of F over lines parallel to the boundary of a half-plane.

    Default offsets are 2^-e for e = -3 .. GRID_DEPTH.
    """
    p = _check_p(p)
    if offsets is None:
        offsets = 2.0 ** -np.arange(-3, halfstrip_settings.GRID_DEPTH + 1)
    geometry = F.geometry
    if decay is None:
        decay = getattr(F, "decay", None)
    norms = [
        lp_norm_on_line(F, p, halfplane_line(domain, offset, geometry), q, decay=decay)
        for offset in offsets
    ]
    return float(max(norms))


def vertical_line_bound(
    f, p: float, x: float, halfplane_norm: float, q: QuadratureSpec | None = None
) -> tuple[float, float]:
    """
    (||f(x + i.)||_{L^p(R+)}, 2^(-1/p) ||f||_{H^p(C+)}) for f in H^p(C+).
    """
    p = _check_p(p)
    decay = getattr(f, "decay", None)
    power_decay = decay.power(p) if isinstance(decay, Decay) else None
    result = integrate_ray(
        lambda w: np.abs(f(w)) ** p,
        complex(x, 0.0),
        1j,
        q,
        decay=power_decay,
        arc_length=True,
    )
    lhs = max(float(np.real(result.value)), 0.0) ** (1.0 / p)
    return lhs, 2.0 ** (-1.0 / p) * halfplane_norm


def exhaustion_bound(F, p: float, n: int, hp_norm: float, q: QuadratureSpec | None = None):
    """
    (integral of |F|^p over C_n, 2 ||F||^p_{H^p(Omega+)}) for the exhaustion curve C_n.
    """
    p = _check_p(p)
    vertices = exhaustion_curve(n, F.geometry)
    result = integrate_polygon(lambda w: np.abs(F(w)) ** p, vertices, q, arc_length=True)
    return float(np.real(result.value)), 2.0 * hp_norm**p


def power_relation(
    F, n: int, p: float, c: ContourSpec, q: QuadratureSpec | None = None
) -> tuple[float, float]:
    """
    (m(s,t,F^n) at exponent p, m(s,t,F)^n at exponent n p) on one contour.

    The two agree exactly: F is in H^(np) exactly when F^n is in H^p.
    """
    if n < 1:
        raise DomainError(f"power must be a positive integer, got {n}")
    p = _check_p(p)
    decay = getattr(F, "decay", None)

    def power(w):
        return np.asarray(F(w), dtype=complex) ** n

    power_decay = None
    if isinstance(decay, Decay):
        power_decay = decay.power(n)
    left = lp_norm_on_contour(power, p, c, q, decay=power_decay)
    right = lp_norm_on_contour(F, n * p, c, q, decay=decay) ** n
    return float(left), float(right)


def boundary_norm_inequality(
    F,
    p: float,
    side: Side | None = None,
    grid: GridSpec | None = None,
    q: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """
    (||F||_{L^p(Gamma)}, H^p grid estimate) for F continuous up to Gamma.

    The boundary norm never exceeds the H^p norm.
    """
    p = _check_p(p)
    side = _side_for(F, side)
    geometry = F.geometry

    def trace(zeta):
        return F.evaluate(zeta, check=False)

    boundary = lp_norm_on_contour(trace, p, geometry.boundary, q, decay=getattr(F, "decay", None))
    estimate = hp_norm_estimate(F, p, side, grid, q)
    return float(boundary), estimate.value

