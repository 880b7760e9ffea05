"""
Adaptive quadrature on the contours Gamma_{s,t} and on straight lines.

Each contour is split into two rays and one segment.  The segment is
integrated with adaptive Gauss-Kronrod panels; each ray is integrated on
[0, 1] directly and on [1, V] in the logarithmic variable r = e^u, where the
truncation height V is chosen from the declared tail bound so that the
discarded tail is below abs_tol / 10.  The tail bound is added to the error
estimate.

Vector-valued integrands (one component per target point) are integrated
in a single pass with ``scipy.integrate.quad_vec``.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .exceptions import DomainError, EvaluationError, TruncationError
from .geometry import ContourSpec, Leg, LineSpec
from .settings import halfstrip_settings

logger = logging.getLogger(__name__)

ALGEBRAIC = "algebraic"
EXPONENTIAL = "exponential"

# Heights at which tail bounds are inferred and checked: r = 2^0 .. 2^19.
_SAMPLE_HEIGHTS = 2.0 ** np.arange(20)
_CHECK_FACTORS = 2.0 ** np.arange(6)
_MAX_BREAKPOINTS = 64
_NEAR_DISTANCE = 2.0


@dataclass(frozen=True)
class Decay:
    """
    Decay class of a function along a ray, in the distance r from the ray's start.

    algebraic: |f| <= scale * r^-rate;  exponential: |f| <= scale * exp(-rate r),
    for r >= 1.  A scale of None is inferred by sampling.
    """

    kind: str
    rate: float
    scale: float | None = None

    def __post_init__(self):
        if self.kind not in (ALGEBRAIC, EXPONENTIAL):
            raise DomainError(f"unknown decay kind {self.kind!r}")
        if not self.rate >= 0:
            raise DomainError(f"decay rate must be non-negative, got {self.rate}")
        if self.scale is not None and self.scale < 0:
            raise DomainError(f"decay scale must be non-negative, got {self.scale}")

    @classmethod
    def algebraic(cls, rate: float, scale: float | None = None) -> "Decay":
        return cls(ALGEBRAIC, rate, scale)

    @classmethod
    def exponential(cls, rate: float, scale: float | None = None) -> "Decay":
        return cls(EXPONENTIAL, rate, scale)

    @classmethod
    def zero(cls) -> "Decay":
        return cls(EXPONENTIAL, 1.0, 0.0)

    @property
    def is_zero(self) -> bool:
        return self.scale == 0.0

    def shape(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == ALGEBRAIC:
            return r ** (-self.rate)
        return np.exp(-self.rate * r)

    def bound(self, r):
        if self.scale is None:
            raise TruncationError("decay scale has not been set")
        return self.scale * self.shape(r)

    def tail(self, height: float) -> float:
        """Integral of the bound from height to infinity."""
        if self.scale == 0.0:
            return 0.0
        if self.scale is None:
            raise TruncationError("decay scale has not been set")
        if self.kind == ALGEBRAIC:
            if self.rate <= 1:
                return np.inf
            return self.scale * height ** (1.0 - self.rate) / (self.rate - 1.0)
        if self.rate == 0:
            return np.inf
        return self.scale * np.exp(-self.rate * height) / self.rate

    def height_for(self, target: float) -> float:
        """Smallest height >= 1 whose tail integral is at most target."""
        if self.scale == 0.0:
            return 1.0
        if self.scale is None:
            raise TruncationError("decay scale has not been set")
        if self.kind == ALGEBRAIC:
            if self.rate <= 1:
                raise TruncationError(
                    f"algebraic decay of rate {self.rate} <= 1 is not integrable"
                )
            with np.errstate(over="ignore"):
                height = np.power(
                    self.scale / ((self.rate - 1.0) * target), 1.0 / (self.rate - 1.0)
                )
        else:
            if self.rate == 0:
                raise TruncationError("exponential decay of rate 0 is not integrable")
            height = np.log(max(self.scale / (self.rate * target), 1.0)) / self.rate
        return float(max(height, 1.0))

    def power(self, p: float) -> "Decay":
        """Decay class of |f|^p."""
        scale = None if self.scale is None else self.scale**p
        return Decay(self.kind, self.rate * p, scale)

    def times(self, other: "Decay") -> "Decay":
        """Decay class of a product."""
        scale = None
        if self.scale is not None and other.scale is not None:
            scale = self.scale * other.scale
        if self.kind == ALGEBRAIC and other.kind == ALGEBRAIC:
            return Decay(ALGEBRAIC, self.rate + other.rate, scale)
        if self.kind == EXPONENTIAL and other.kind == EXPONENTIAL:
            return Decay(EXPONENTIAL, self.rate + other.rate, scale)
        rate = self.rate if self.kind == EXPONENTIAL else other.rate
        return Decay(EXPONENTIAL, rate, None)

    def plus(self, other: "Decay") -> "Decay":
        """Decay class of a sum: the slower of the two."""
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.kind != other.kind:
            return self if self.kind == ALGEBRAIC else other
        return Decay(self.kind, min(self.rate, other.rate), None)

    def with_kernel(self) -> "Decay":
        """Decay class after multiplying by a Cauchy kernel 1/(zeta - w)."""
        if self.is_zero:
            return self
        if self.kind == ALGEBRAIC:
            return Decay(ALGEBRAIC, self.rate + 1.0, None)
        return Decay(EXPONENTIAL, self.rate, None)


TailBound = Decay | Callable[[float], float]


def _default_rel_tol():
    return halfstrip_settings.QUAD_REL_TOL


def _default_abs_tol():
    return halfstrip_settings.QUAD_ABS_TOL


def _default_subdivisions():
    return halfstrip_settings.QUAD_MAX_SUBDIVISIONS


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and tail handling for contour and line integrals."""

    rel_tol: float = field(default_factory=_default_rel_tol)
    abs_tol: float = field(default_factory=_default_abs_tol)
    max_subdivisions: int = field(default_factory=_default_subdivisions)
    tail_bound: TailBound | None = None
    truncation_height: float | None = None

    def __post_init__(self):
        if not self.rel_tol > 0 or not self.abs_tol > 0:
            raise DomainError(
                f"tolerances must be positive, got rel_tol={self.rel_tol}, abs_tol={self.abs_tol}"
            )
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")
        if self.truncation_height is not None and not self.truncation_height > 0:
            raise DomainError(f"truncation height must be positive, got {self.truncation_height}")

    def replace(self, **changes) -> "QuadratureSpec":
        values = {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_subdivisions": self.max_subdivisions,
            "tail_bound": self.tail_bound,
            "truncation_height": self.truncation_height,
        }
        values.update(changes)
        return QuadratureSpec(**values)


@dataclass
class QuadratureValue:
    """Result of a contour or line integral."""

    value: complex | np.ndarray
    error_estimate: float
    leg_values: tuple
    truncation_height: float
    accurate: bool = True
    metadata: dict = field(default_factory=dict)

    def scaled(self, factor: complex) -> "QuadratureValue":
        return QuadratureValue(
            value=self.value * factor,
            error_estimate=self.error_estimate * abs(factor),
            leg_values=tuple(v * factor for v in self.leg_values),
            truncation_height=self.truncation_height,
            accurate=self.accurate,
            metadata=dict(self.metadata),
        )


class _Integrand:
    """Wraps a user callable: flattens its output and rejects non-finite samples."""

    def __init__(self, func: Callable, label: str = "integrand"):
        self.func = func
        self.label = label
        self.shape = None

    def __call__(self, zeta: complex) -> np.ndarray:
        value = np.asarray(self.func(zeta), dtype=complex)
        if self.shape is None:
            self.shape = value.shape
        flat = value.reshape(-1)
        if not np.all(np.isfinite(flat)):
            raise EvaluationError(f"non-finite {self.label} sample at zeta={complex(zeta)}")
        return flat

    def unwrap(self, flat: np.ndarray):
        if self.shape is None or self.shape == ():
            return complex(flat[0])
        return flat.reshape(self.shape)


def _stack(values: np.ndarray) -> np.ndarray:
    return np.concatenate([values.real, values.imag])


def _unstack(stacked: np.ndarray) -> np.ndarray:
    n = stacked.shape[0] // 2
    return stacked[:n] + 1j * stacked[n:]


def _quad_pieces(g: Callable, a: float, b: float, spec: QuadratureSpec, points=()):
    """One quad_vec call on [a, b] for a real-stacked vector integrand."""
    inner = sorted({float(x) for x in points if a < x < b})
    kwargs = {}
    if inner and np.isfinite(b):
        kwargs["points"] = inner
    result, error, info = integrate.quad_vec(
        g,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        norm="max",
        limit=spec.max_subdivisions,
        quadrature="gk21" if np.isfinite(b) else "gk15",
        full_output=True,
        **kwargs,
    )
    return result, float(error), bool(info.success), int(info.neval)


def _resolve_decay(decay: TailBound | None, spec: QuadratureSpec) -> TailBound | None:
    return spec.tail_bound if spec.tail_bound is not None else decay


def _infer_scale(decay: Decay, sample: Callable[[float], float]) -> Decay:
    if decay.scale is not None:
        return decay
    ratios = [
        sample(r) / float(decay.shape(r)) for r in _SAMPLE_HEIGHTS if decay.shape(r) > 1e-250
    ]
    scale = 2.0 * max(ratios) if ratios else 0.0
    return Decay(decay.kind, decay.rate, scale)


def _check_tail(bound: Callable[[float], float], sample: Callable[[float], float], height: float):
    for factor in _CHECK_FACTORS:
        r = height * factor
        observed = sample(r)
        allowed = float(bound(r))
        if observed > allowed * (1.0 + 1e-6) + 1e-300:
            raise TruncationError(
                f"tail bound violated at height {r:.6g}: |f|={observed:.6g} > bound {allowed:.6g}"
            )


def _callable_height(bound: Callable[[float], float], target: float) -> float:
    height = 1.0
    for _ in range(200):
        tail, _err = integrate.quad(bound, height, np.inf, limit=200)
        if tail <= target:
            return height
        height *= 2.0
    raise TruncationError("callable tail bound does not become small enough")


def _near_parameters(leg: Leg, targets: np.ndarray) -> list[float]:
    if targets.size == 0:
        return []
    rel = (targets - leg.anchor) * np.conj(leg.direction)
    along, across = rel.real, np.abs(rel.imag)
    mask = (along > 0) & (along < leg.length) & (across < _NEAR_DISTANCE)
    candidates = sorted(zip(across[mask], along[mask], strict=True))[:_MAX_BREAKPOINTS]
    return [float(r) for _d, r in candidates]


def _integrate_leg(
    integrand: _Integrand,
    leg: Leg,
    element: complex,
    spec: QuadratureSpec,
    decay: TailBound | None,
    targets: np.ndarray,
):
    """
    Integrate integrand(leg.point(r)) * element dr over the leg.

    Returns:
        (complex vector, error estimate, truncation height, converged, evaluations)
    """
    near = _near_parameters(leg, targets)

    def linear(r):
        return _stack(integrand(leg.point(r)) * element)

    if not leg.is_ray:
        result, error, ok, neval = _quad_pieces(linear, 0.0, leg.length, spec, near)
        return _unstack(result), error, leg.length, ok, neval

    def sample(r):
        return float(np.max(np.abs(integrand(leg.point(r)))))

    tail_error = 0.0
    explicit = spec.truncation_height
    if explicit is not None:
        height = float(explicit)
    elif decay is None:
        height = np.inf
    elif isinstance(decay, Decay):
        resolved = _infer_scale(decay, sample)
        if resolved.is_zero:
            height = 1.0
        else:
            height = resolved.height_for(spec.abs_tol / 10.0)
            if np.isfinite(height):
                _check_tail(resolved.bound, sample, height)
                tail_error = resolved.tail(height)
    else:
        height = _callable_height(decay, spec.abs_tol / 10.0)
        _check_tail(decay, sample, height)
        tail_error, _err = integrate.quad(decay, height, np.inf, limit=200)

    def logarithmic(u):
        r = np.exp(u)
        return _stack(integrand(leg.point(r)) * element * r)

    first = min(1.0, height)
    total = np.zeros(0)
    error = 0.0
    ok = True
    neval = 0

    pieces = [(linear, 0.0, first, [r for r in near if r < first])]
    if height > 1.0:
        upper = np.log(height) if np.isfinite(height) else np.inf
        if np.isfinite(upper):
            pieces.append((logarithmic, 0.0, upper, [np.log(r) for r in near if r > 1.0]))
        else:
            pieces.append((linear, 1.0, np.inf, []))
    if explicit is not None:
        pieces.append((linear, height, np.inf, []))

    for g, a, b, points in pieces:
        result, piece_error, piece_ok, piece_neval = _quad_pieces(g, a, b, spec, points)
        total = result if total.size == 0 else total + result
        error += piece_error
        ok = ok and piece_ok
        neval += piece_neval

    logger.debug(
        f"leg {leg.index}: truncation height {height:.6g}, tail bound {tail_error:.3g}, "
        f"{neval} evaluations"
    )
    return _unstack(total), error + tail_error, height, ok, neval


def _finish(integrand, leg_vectors, error, heights, ok, neval, label, extra=None):
    total = sum(leg_vectors)
    if not ok:
        logger.warning(f"{label}: requested accuracy not reached (error estimate {error:.3g})")
    metadata = {"evaluations": neval}
    if extra:
        metadata.update(extra)
    return QuadratureValue(
        value=integrand.unwrap(total),
        error_estimate=float(error),
        leg_values=tuple(integrand.unwrap(v) for v in leg_vectors),
        truncation_height=float(max(heights)) if heights else 0.0,
        accurate=ok,
        metadata=metadata,
    )


def integrate_contour(
    f: Callable,
    c: ContourSpec,
    q: QuadratureSpec | None = None,
    *,
    decay: TailBound | None = None,
    targets: Sequence[complex] = (),
    legs: Sequence[int] = (1, 2, 3),
    arc_length: bool = False,
) -> QuadratureValue:
    """
    Integrate f(zeta) d zeta over Gamma_{s,t}, oriented with D_{s,t} on the left.

    Args:
        f: Complex callable of zeta, scalar- or vector-valued
        c: The contour
        q: Tolerances and tail handling (settings defaults when omitted)
        decay: Decay class of the integrand along the rays, used when q has no tail bound
        targets: Points near which the integrand peaks; used as breakpoints
        legs: Subset of legs to integrate; the others contribute 0
        arc_length: Integrate against |d zeta| instead of d zeta

    Returns:
        QuadratureValue with one partial sum per leg

    Raises:
        EvaluationError: Non-finite integrand sample
        TruncationError: Tail bound violated or not integrable
    """
    q = q or QuadratureSpec()
    integrand = _Integrand(f)
    tail = _resolve_decay(decay, q)
    target_array = np.atleast_1d(np.asarray(targets, dtype=complex)).reshape(-1)

    probe = c.leg(2).point(c.s * (np.sqrt(2.0) - 1.0))
    zero = np.zeros_like(integrand(probe))

    vectors = []
    heights = []
    error = 0.0
    ok = True
    neval = 0
    for leg in c.legs:
        if leg.index not in legs:
            vectors.append(zero)
            continue
        element = 1.0 if arc_length else leg.element
        vector, leg_error, height, leg_ok, leg_neval = _integrate_leg(
            integrand, leg, element, q, tail, target_array
        )
        vectors.append(vector)
        heights.append(height)
        error += leg_error
        ok = ok and leg_ok
        neval += leg_neval
    return _finish(integrand, vectors, error, heights, ok, neval, f"contour (s={c.s}, t={c.t})")


def integrate_ray(
    f: Callable,
    anchor: complex,
    direction: complex,
    q: QuadratureSpec | None = None,
    *,
    decay: TailBound | None = None,
    targets: Sequence[complex] = (),
    arc_length: bool = False,
) -> QuadratureValue:
    """Integrate f along the ray anchor + direction * r, r > 0."""
    q = q or QuadratureSpec()
    integrand = _Integrand(f)
    direction = complex(direction) / abs(direction)
    leg = Leg(0, complex(anchor), direction, 1, np.inf)
    element = 1.0 if arc_length else direction
    target_array = np.atleast_1d(np.asarray(targets, dtype=complex)).reshape(-1)
    vector, error, height, ok, neval = _integrate_leg(
        integrand, leg, element, q, _resolve_decay(decay, q), target_array
    )
    return _finish(integrand, [vector], error, [height], ok, neval, "ray")


def integrate_line(
    f: Callable,
    line: LineSpec,
    q: QuadratureSpec | None = None,
    *,
    decay: TailBound | None = None,
    targets: Sequence[complex] = (),
    arc_length: bool = False,
) -> QuadratureValue:
    """
    Integrate f over a full line in the direction of its orientation.

    The line is split at its anchor into two rays truncated by the same rule
    as contour rays.  leg_values holds (backward ray, forward ray).
    """
    q = q or QuadratureSpec()
    integrand = _Integrand(f)
    tail = _resolve_decay(decay, q)
    target_array = np.atleast_1d(np.asarray(targets, dtype=complex)).reshape(-1)
    direction = complex(line.direction) / abs(line.direction)
    element = 1.0 if arc_length else direction

    vectors = []
    heights = []
    error = 0.0
    ok = True
    neval = 0
    for index, sign in ((1, -1.0), (3, 1.0)):
        leg = Leg(index, complex(line.anchor), sign * direction, 1, np.inf)
        vector, leg_error, height, leg_ok, leg_neval = _integrate_leg(
            integrand, leg, element, q, tail, target_array
        )
        vectors.append(vector)
        heights.append(height)
        error += leg_error
        ok = ok and leg_ok
        neval += leg_neval
    return _finish(integrand, vectors, error, heights, ok, neval, f"line {line.name}")


def integrate_polygon(
    f: Callable,
    vertices: Sequence[complex],
    q: QuadratureSpec | None = None,
    *,
    arc_length: bool = False,
) -> QuadratureValue:
    """Integrate f along a polygonal path; leg_values holds one value per edge."""
    q = q or QuadratureSpec()
    integrand = _Integrand(f)
    vertices = [complex(v) for v in vertices]
    vectors = []
    error = 0.0
    ok = True
    neval = 0
    for a, b in zip(vertices[:-1], vertices[1:], strict=True):
        edge = b - a
        element = abs(edge) if arc_length else edge

        def g(t, a=a, edge=edge, element=element):
            return _stack(integrand(a + edge * t) * element)

        result, edge_error, edge_ok, edge_neval = _quad_pieces(g, 0.0, 1.0, q)
        vectors.append(_unstack(result))
        error += edge_error
        ok = ok and edge_ok
        neval += edge_neval
    return _finish(integrand, vectors, error, [], ok, neval, "polygon")


def _warn_quasi_norm(p: float) -> bool:
    if p < 1:
        logger.warning(f"p={p} < 1: the L^p quantity is only a quasi-norm")
        return True
    return False


def _power_integrand(F: Callable, p: float) -> Callable:
    def g(zeta):
        return np.abs(np.asarray(F(zeta), dtype=complex)) ** p

    return g


def _decay_of(F, decay):
    if decay is None:
        decay = getattr(F, "decay", None)
    return decay


def contour_lp_integral(
    F: Callable,
    p: float,
    c: ContourSpec,
    q: QuadratureSpec | None = None,
    *,
    decay: Decay | None = None,
) -> QuadratureValue:
    """The integral of |F|^p |dw| over Gamma_{s,t}, with per-leg partial sums."""
    if not 0 < p < np.inf:
        raise DomainError(f"p must lie in (0, inf), got {p}")
    quasi = _warn_quasi_norm(p)
    decay = _decay_of(F, decay)
    power_decay = decay.power(p) if isinstance(decay, Decay) else None
    if isinstance(power_decay, Decay) and power_decay.kind == ALGEBRAIC and power_decay.rate <= 1:
        raise TruncationError(
            f"|F|^p decays like r^-{power_decay.rate:g}: not integrable on the rays for p={p}"
        )
    result = integrate_contour(_power_integrand(F, p), c, q, decay=power_decay, arc_length=True)
    result.metadata["quasi_norm"] = quasi
    return result


def lp_norm_on_contour(
    F: Callable,
    p: float,
    c: ContourSpec,
    q: QuadratureSpec | None = None,
    *,
    decay: Decay | None = None,
    full_output: bool = False,
):
    """
    m(s,t,F) = (integral of |F|^p |dw| over Gamma_{s,t})^(1/p).

    p = inf returns the supremum of |F| over the nodes of a graded contour rule.

    Returns:
        float, or (float, QuadratureValue) when full_output is set
    """
    if p == np.inf:
        rule = contour_rule(c)
        value = rule_lp_norm(np.asarray(F(rule.nodes), dtype=complex), rule, np.inf)
        if full_output:
            return value, QuadratureValue(value, 0.0, (), rule.reach, True, {"sup": True})
        return value
    result = contour_lp_integral(F, p, c, q, decay=decay)
    integral = max(float(np.real(result.value)), 0.0)
    value = integral ** (1.0 / p)
    if full_output:
        return value, result
    return value


def lp_norm_on_line(
    F: Callable,
    p: float,
    line: LineSpec,
    q: QuadratureSpec | None = None,
    *,
    decay: Decay | None = None,
    full_output: bool = False,
):
    """(integral of |F|^p over the line)^(1/p)."""
    if not 0 < p < np.inf:
        raise DomainError(f"p must lie in (0, inf), got {p}")
    _warn_quasi_norm(p)
    decay = _decay_of(F, decay)
    power_decay = decay.power(p) if isinstance(decay, Decay) else None
    result = integrate_line(_power_integrand(F, p), line, q, decay=power_decay, arc_length=True)
    integral = max(float(np.real(result.value)), 0.0)
    value = integral ** (1.0 / p)
    if full_output:
        return value, result
    return value


@dataclass(frozen=True)
class ContourRule:
    """Fixed composite Gauss-Legendre rule on a contour or line."""

    nodes: np.ndarray
    weights: np.ndarray
    arc_weights: np.ndarray
    legs: np.ndarray
    params: np.ndarray
    reach: float

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def integrate(self, values) -> complex:
        return complex(np.sum(np.asarray(values) * self.weights))


def _ray_breaks(grading: int, width: float, reach: float) -> np.ndarray:
    fine = width * 2.0 ** -np.arange(grading, 0, -1)
    uniform = np.arange(width, 2.0 + 0.5 * width, width)
    geometric = 2.0 ** np.arange(2, int(np.log2(reach)) + 1)
    return np.unique(np.concatenate([[0.0], fine, uniform, geometric]))


def _segment_breaks(length: float, grading: int, width: float) -> np.ndarray:
    count = max(2, int(np.ceil(length / width)))
    base = np.linspace(0.0, length, count + 1)
    h = length / count
    graded = h * 2.0 ** -np.arange(1, grading + 1)
    return np.unique(np.concatenate([base, graded, length - graded]))


def _panel_nodes(breaks: np.ndarray, x: np.ndarray, w: np.ndarray):
    a, b = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (b - a)
    params = (0.5 * (a + b) + half * x[None, :]).reshape(-1)
    weights = (half * w[None, :]).reshape(-1)
    return params, weights


def _rule_from_legs(legs: Sequence[Leg], elements, order, grading, reach, width):
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights, arc, leg_ids, params = [], [], [], [], []
    for leg, element in zip(legs, elements, strict=True):
        if leg.is_ray:
            breaks = _ray_breaks(grading, width, reach)
        else:
            breaks = _segment_breaks(leg.length, grading, width)
        r, wr = _panel_nodes(breaks, x, w)
        nodes.append(leg.point(r))
        weights.append(wr * element)
        arc.append(wr)
        leg_ids.append(np.full(r.size, leg.index))
        params.append(r)
    return ContourRule(
        nodes=np.concatenate(nodes),
        weights=np.concatenate(weights),
        arc_weights=np.concatenate(arc),
        legs=np.concatenate(leg_ids),
        params=np.concatenate(params),
        reach=float(reach),
    )


def contour_rule(
    c: ContourSpec,
    order: int = 16,
    grading: int = 10,
    reach: float = 2.0**20,
    width: float = 0.25,
) -> ContourRule:
    """
    Composite Gauss-Legendre rule on Gamma_{s,t}, graded toward both corners.

    Rays are covered up to ``reach``; beyond it rule_lp_norm adds a fitted
    algebraic tail.  Nodes never sit on a corner.
    """
    legs = c.legs
    return _rule_from_legs(legs, [leg.element for leg in legs], order, grading, reach, width)


def line_rule(
    line: LineSpec,
    order: int = 16,
    grading: int = 6,
    reach: float = 2.0**20,
    width: float = 0.25,
) -> ContourRule:
    """Composite Gauss-Legendre rule on a full line; legs 1 and 3 are the two rays."""
    direction = complex(line.direction) / abs(line.direction)
    legs = (
        Leg(1, complex(line.anchor), -direction, 1, np.inf),
        Leg(3, complex(line.anchor), direction, 1, np.inf),
    )
    return _rule_from_legs(legs, [direction, direction], order, grading, reach, width)


def _fitted_tail(power_values: np.ndarray, params: np.ndarray, reach: float) -> float:
    order = np.argsort(params)
    params, power_values = params[order], power_values[order]
    far = params > reach / 4.0
    mid = (params > reach / 16.0) & (params <= reach / 4.0)
    if not far.any() or not mid.any():
        return 0.0
    r2, g2 = params[far][-1], power_values[far][-1]
    r1, g1 = params[mid][-1], power_values[mid][-1]
    if g2 == 0.0:
        return 0.0
    if g1 <= 0.0:
        raise TruncationError("cannot fit a tail to non-decaying samples")
    rate = -np.log(g2 / g1) / np.log(r2 / r1)
    if rate <= 1.0 + 1e-6:
        raise TruncationError(f"fitted tail decays like r^-{rate:.3g}: not integrable")
    return float(g2 * r2**rate * reach ** (1.0 - rate) / (rate - 1.0))


def rule_lp_norm(values, rule: ContourRule, p: float) -> float:
    """
    L^p norm of node values on a rule, with fitted algebraic tails on the rays.

    p = inf gives the maximum modulus over the nodes.
    """
    magnitudes = np.abs(np.asarray(values, dtype=complex))
    if p == np.inf:
        return float(np.max(magnitudes)) if magnitudes.size else 0.0
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    _warn_quasi_norm(p)
    power = magnitudes**p
    total = float(np.sum(power * rule.arc_weights))
    for index in (1, 3):
        on_ray = rule.legs == index
        if on_ray.any():
            total += _fitted_tail(power[on_ray], rule.params[on_ray], rule.reach)
    return total ** (1.0 / p)
