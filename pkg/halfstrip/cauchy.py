"""
Cauchy transforms on Gamma and on lines.

Covers the symmetric kernel K_z, the Poisson kernel, non-tangential
limits, the jump decomposition into Omega+ and Omega- parts, the
splitting into half-plane pieces, boundary-membership moments and
orthogonality pairings.  All evaluation is off the contour; boundary
values are reached through non-tangential limits only.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, SingularityError
from .geometry import (
    ContourSpec,
    Cone,
    Domain,
    LineSpec,
    Region,
    Side,
    StripGeometry,
    classify,
    contour_point,
    kernel_radius,
    line,
)
from .quadrature import (
    Decay,
    QuadratureSpec,
    integrate_contour,
    integrate_line,
)
from .settings import halfstrip_settings
from .tasks import run_tasks

logger = logging.getLogger(__name__)

TWO_PI_I = 2j * np.pi


@dataclass
class AnalyticFunction:
    """
    A complex function declared analytic on an open region.

    Calling it outside the region raises DomainError.
    """

    func: Callable
    domain: Domain
    geometry: StripGeometry
    decay: Decay | None = None
    name: str = ""

    def __post_init__(self):
        self.domain = Domain(self.domain)

    def __call__(self, w):
        w_array = np.asarray(w, dtype=complex)
        inside = self.domain.contains(w_array, self.geometry.sigma)
        if not np.all(inside):
            bad = w_array.reshape(-1)[~np.atleast_1d(inside).reshape(-1)][0]
            raise DomainError(
                f"{self.name or 'function'} evaluated at {complex(bad)} outside {self.domain.value}"
            )
        return self.func(w)

    def evaluate(self, w, check: bool = True):
        """Evaluate, optionally skipping the region check (for boundary traces)."""
        if check:
            return self(w)
        return self.func(w)


@dataclass
class BoundaryFunction:
    """
    A complex function on Gamma with decay data on both rays.

    ``p_class`` is (p_low, p_high): the function is in L^p(Gamma) for
    p_low < p <= p_high.
    """

    func: Callable
    geometry: StripGeometry
    decay: Decay | None = None
    p_class: tuple[float, float] = (1.0, np.inf)
    singular_params: tuple = ()
    name: str = ""

    def __call__(self, zeta):
        return self.func(zeta)

    def at_parameter(self, b):
        return self.func(contour_point(b, self.geometry.boundary))

    def validate_decay(self) -> None:
        """
        Check the declared decay against |F| at 20 heights per ray.

        Only a declared scale can be checked; otherwise the scale is inferred
        during integration.
        """
        from .exceptions import TruncationError

        if self.decay is None or self.decay.scale is None:
            return
        heights = 2.0 ** np.arange(20)
        for leg in (self.geometry.boundary.leg(1), self.geometry.boundary.leg(3)):
            observed = np.abs(np.asarray(self.func(leg.point(heights)), dtype=complex))
            allowed = self.decay.bound(heights)
            if np.any(observed > allowed * (1 + 1e-9) + 1e-300):
                raise TruncationError(f"declared decay of {self.name or 'F'} does not dominate |F|")

    def admits(self, p: float) -> bool:
        low, high = self.p_class
        return low < p <= high


def _boundary_decay(F) -> Decay | None:
    decay = getattr(F, "decay", None)
    return decay.with_kernel() if isinstance(decay, Decay) else None


def _reject_on_contour(points: np.ndarray, g: StripGeometry) -> None:
    for w in points:
        region = classify(w, g)
        if region.is_boundary:
            raise SingularityError(
                f"Cauchy transform is not evaluated on Gamma: w={w} ({region.value})"
            )


def cauchy_transform(
    F,
    w,
    q: QuadratureSpec | None = None,
    *,
    legs: Sequence[int] = (1, 2, 3),
    full_output: bool = False,
):
    """
    (1/2 pi i) integral over Gamma of F(zeta) / (zeta - w) d zeta.

    Args:
        F: BoundaryFunction (or callable with ``geometry`` and ``decay``)
        w: Point or array of points off Gamma
        q: Quadrature tolerances
        legs: Restrict the integral to these legs of Gamma
        full_output: Also return the QuadratureValue

    Returns:
        complex or array, plus the QuadratureValue when full_output is set

    Raises:
        SingularityError: A point lies on Gamma
    """
    g = F.geometry
    points = np.atleast_1d(np.asarray(w, dtype=complex))
    flat = points.reshape(-1)
    _reject_on_contour(flat, g)

    def integrand(zeta):
        return F(zeta) / (zeta - flat)

    result = integrate_contour(
        integrand, g.boundary, q, decay=_boundary_decay(F), targets=flat, legs=legs
    ).scaled(1.0 / TWO_PI_I)
    values = np.asarray(result.value).reshape(points.shape)
    if np.ndim(w) == 0:
        values = complex(values.reshape(-1)[0])
    if full_output:
        return values, result
    return values


def cauchy_transform_line(
    f: Callable,
    z,
    q: QuadratureSpec | None = None,
    *,
    line_spec: LineSpec | None = None,
    decay: Decay | None = None,
    full_output: bool = False,
):
    """
    (1/2 pi i) integral over a line of f(t) / (t - z) dt, by default over R.

    Raises:
        SingularityError: z lies on the line
    """
    line_spec = line_spec or LineSpec(0j, 1.0 + 0j, "R")
    points = np.atleast_1d(np.asarray(z, dtype=complex))
    flat = points.reshape(-1)
    tolerance = halfstrip_settings.SNAP_TOLERANCE
    distance = line_spec.distance(flat)
    if np.any(distance <= tolerance * np.maximum(1.0, np.abs(flat))):
        raise SingularityError(f"line Cauchy transform evaluated on the line at {flat}")

    def integrand(t):
        return f(t) / (t - flat)

    if decay is None:
        decay = getattr(f, "decay", None)
    kernel_decay = decay.with_kernel() if isinstance(decay, Decay) else None
    result = integrate_line(integrand, line_spec, q, decay=kernel_decay, targets=flat).scaled(
        1.0 / TWO_PI_I
    )
    values = np.asarray(result.value).reshape(points.shape)
    if np.ndim(z) == 0:
        values = complex(values.reshape(-1)[0])
    if full_output:
        return values, result
    return values


@dataclass
class TransformBatch:
    """Transform values at many points, with the summed error estimate."""

    points: np.ndarray
    values: np.ndarray
    error_estimate: float
    accurate: bool


def _batched(transform: Callable, points, chunk: int, threads: int | None) -> TransformBatch:
    flat = np.asarray(points, dtype=complex).reshape(-1)
    if chunk < 1:
        raise DomainError(f"chunk size must be positive, got {chunk}")
    pieces = [flat[i : i + chunk] for i in range(0, flat.size, chunk)]
    results = run_tasks(transform, pieces, threads)
    values = [np.asarray(v, dtype=complex).reshape(-1) for v, _r in results]
    return TransformBatch(
        points=flat,
        values=np.concatenate(values) if values else np.zeros(0, dtype=complex),
        error_estimate=float(sum(r.error_estimate for _v, r in results)),
        accurate=all(r.accurate for _v, r in results),
    )


def cauchy_transform_many(
    F,
    points,
    q: QuadratureSpec | None = None,
    *,
    chunk: int = 64,
    threads: int | None = None,
) -> TransformBatch:
    """
    The Cauchy transform at many points, one quadrature pass per chunk.

    Chunks keep the breakpoint lists short when the points crowd Gamma.
    """
    return _batched(
        lambda piece: cauchy_transform(F, piece, q, full_output=True), points, chunk, threads
    )


def cauchy_transform_line_many(
    f: Callable,
    points,
    q: QuadratureSpec | None = None,
    *,
    line_spec: LineSpec | None = None,
    decay: Decay | None = None,
    chunk: int = 64,
    threads: int | None = None,
) -> TransformBatch:
    """Chunked cauchy_transform_line."""
    return _batched(
        lambda piece: cauchy_transform_line(
            f, piece, q, line_spec=line_spec, decay=decay, full_output=True
        ),
        points,
        chunk,
        threads,
    )


def kernel_K(z, zeta, zeta0):
    """
    K_z(zeta, zeta0) = (1/(pi i)) z / ((zeta - zeta0)^2 - z^2), vectorised.

    Raises:
        SingularityError: zeta = zeta0 +- z
    """
    z = np.asarray(z, dtype=complex)
    d = np.asarray(zeta, dtype=complex) - np.asarray(zeta0, dtype=complex)
    denominator = d * d - z * z
    if np.any(denominator == 0):
        raise SingularityError("kernel K_z evaluated at zeta = zeta0 +- z")
    result = z / (1j * np.pi * denominator)
    if np.ndim(result) == 0:
        return complex(result)
    return result


def kernel_cone_bound(z, zeta, zeta0, alpha: float):
    """
    Return (|K_z|, (1/pi) 2(1 + alpha^2) |z| / (|zeta - zeta0|^2 + |z|^2)).

    The bound holds for z + zeta0 in the cone of aperture alpha and
    |z| below the kernel radius of zeta0.
    """
    modulus = np.abs(kernel_K(z, zeta, zeta0))
    z_abs = np.abs(np.asarray(z, dtype=complex))
    d_abs = np.abs(np.asarray(zeta, dtype=complex) - np.asarray(zeta0, dtype=complex))
    bound = 2.0 * (1.0 + alpha**2) * z_abs / (np.pi * (d_abs**2 + z_abs**2))
    return modulus, bound


def kernel_integral(
    z: complex,
    zeta0: complex,
    g: StripGeometry,
    q: QuadratureSpec | None = None,
    *,
    full_output: bool = False,
):
    """
    Integral of K_z(zeta, zeta0) d zeta over Gamma; equal to 1 exactly.

    Raises:
        DomainError: zeta0 + z is not in Omega+ or zeta0 - z is not in Omega-
    """
    z, zeta0 = complex(z), complex(zeta0)
    inner, outer = zeta0 + z, zeta0 - z
    if classify(inner, g) is not Region.OMEGA_PLUS:
        raise DomainError(f"zeta0 + z = {inner} is not in Omega+")
    if classify(outer, g) is not Region.OMEGA_MINUS:
        raise DomainError(f"zeta0 - z = {outer} is not in Omega-")

    def integrand(zeta):
        return kernel_K(z, zeta, zeta0)

    result = integrate_contour(
        integrand, g.boundary, q, decay=Decay.algebraic(2.0), targets=[inner, outer, zeta0]
    )
    if full_output:
        return complex(result.value), result
    return complex(result.value)


def poisson_kernel(a: float, b):
    """
    (1/pi) a / (a^2 + b^2): the Poisson kernel with bandwidth a.

    Raises:
        DomainError: a <= 0
    """
    if not a > 0:
        raise DomainError(f"Poisson kernel bandwidth must be positive, got {a}")
    b = np.asarray(b, dtype=float)
    result = a / (np.pi * (a * a + b * b))
    return float(result) if result.ndim == 0 else result


@dataclass
class NontangentialLimit:
    """Extrapolated boundary value and the raw approach table."""

    limit: complex
    table: list[tuple[float, complex]]
    converged: bool
    vertex: complex
    alpha: float
    side: Side
    metadata: dict = field(default_factory=dict)


def _side_of(G: AnalyticFunction) -> Side:
    if G.domain.covers(Side.PLUS) and not G.domain.covers(Side.MINUS):
        return Side.PLUS
    if G.domain.covers(Side.MINUS) and not G.domain.covers(Side.PLUS):
        return Side.MINUS
    return Side.PLUS


def _extrapolate(radii: np.ndarray, values: np.ndarray) -> complex:
    """Polynomial extrapolation to r = 0 through the last three samples."""
    r = radii[-3:]
    v = values[-3:]
    total = 0j
    for i in range(r.size):
        weight = 1.0
        for j in range(r.size):
            if i != j:
                weight *= (0.0 - r[j]) / (r[i] - r[j])
        total += weight * v[i]
    return complex(total)


def nontangential_limit(
    G: AnalyticFunction,
    zeta0: complex,
    alpha: float,
    *,
    side: Side | None = None,
    radii: Sequence[float] | None = None,
    levels: int = 16,
) -> NontangentialLimit:
    """
    Approach zeta0 along the bisector of its cone and extrapolate the limit.

    The default schedule is r_k = r0 2^-k, k = 0..levels-1, with
    r0 = min(0.1, delta(zeta0)/2).  Non-convergence is flagged, not raised.

    Raises:
        DomainError: zeta0 is a corner, or an approach point leaves the cone or the region
    """
    g = G.geometry
    side = Side(side) if side is not None else _side_of(G)
    cone = Cone(complex(zeta0), alpha, side, g)
    if radii is None:
        r0 = min(0.1, kernel_radius(zeta0, g) / 2.0)
        radii = r0 * 2.0 ** -np.arange(levels)
    radii = np.asarray(radii, dtype=float)
    if radii.size < 2 or np.any(radii <= 0) or np.any(np.diff(radii) >= 0):
        raise DomainError("approach radii must be positive and strictly decreasing")

    points = cone.approach_point(radii)
    for w in points:
        if not cone.contains(w):
            raise DomainError(f"approach point {w} is outside the cone at {zeta0}")
        if not G.domain.contains(w, g.sigma):
            raise DomainError(f"approach point {w} is outside {G.domain.value}")

    values = np.asarray(G(points), dtype=complex).reshape(-1)
    limit = _extrapolate(radii, values) if radii.size >= 3 else complex(values[-1])
    steps = np.abs(np.diff(values))
    tail = steps[-4:]
    converged = bool(np.all(np.diff(tail) <= 1e-12 + 1e-9 * np.abs(values[-1])))
    if not converged:
        logger.warning(f"non-tangential values at {zeta0} do not settle: last steps {tail}")
    return NontangentialLimit(
        limit=limit,
        table=[(float(r), complex(v)) for r, v in zip(radii, values, strict=True)],
        converged=converged,
        vertex=complex(zeta0),
        alpha=float(alpha),
        side=side,
    )


def _require_lp(F: BoundaryFunction) -> None:
    low, high = getattr(F, "p_class", (1.0, np.inf))
    if high <= 1 or low >= np.inf:
        raise DomainError(f"{getattr(F, 'name', 'F')} is not in L^p(Gamma) for any 1 < p < inf")


def cauchy_handle(F: BoundaryFunction, side: Side, q: QuadratureSpec | None = None, sign: int = 1):
    """The Cauchy transform of F restricted to Omega+ or Omega-, as a function handle."""
    side = Side(side)

    def evaluate(w):
        return sign * cauchy_transform(F, w, q)

    name = getattr(F, "name", "") or "F"
    return AnalyticFunction(
        evaluate, Domain.for_side(side), F.geometry, decay=None, name=f"C[{name}]|{side.value}"
    )


def jump_decompose(
    F: BoundaryFunction, q: QuadratureSpec | None = None
) -> tuple[AnalyticFunction, AnalyticFunction]:
    """
    Split F into F+ on Omega+ and F- on Omega- with F = F+ + F- on Gamma.

    F+ is the Cauchy transform on Omega+ and F- is minus the Cauchy
    transform on Omega-.
    """
    _require_lp(F)
    return cauchy_handle(F, Side.PLUS, q, 1), cauchy_handle(F, Side.MINUS, q, -1)


_HALFPLANE_DOMAINS = {
    1: Domain.RIGHT_OF_LEFT_LINE,
    2: Domain.UPPER,
    3: Domain.LEFT_OF_RIGHT_LINE,
}


def decompose_into_halfplanes(
    F: BoundaryFunction, q: QuadratureSpec | None = None
) -> tuple[AnalyticFunction, AnalyticFunction, AnalyticFunction]:
    """
    Pieces F_j = (1/2 pi i) integral over Gamma_j of F / (zeta - w) d zeta.

    F_1 is analytic on Re w > -sigma, F_2 on C+, F_3 on Re w < sigma, and
    F_1 + F_2 + F_3 is the Cauchy transform of F on Omega+.
    """
    _require_lp(F)
    handles = []
    for j in (1, 2, 3):

        def evaluate(w, j=j):
            points = np.atleast_1d(np.asarray(w, dtype=complex))
            leg = line(j, F.geometry)
            if np.any(leg.distance(points) == 0):
                raise SingularityError(f"half-plane piece {j} evaluated on its line")
            values = _legwise_transform(F, points, j, q)
            return complex(values[0]) if np.ndim(w) == 0 else values.reshape(np.shape(w))

        handles.append(
            AnalyticFunction(evaluate, _HALFPLANE_DOMAINS[j], F.geometry, name=f"F{j}")
        )
    return tuple(handles)


def _legwise_transform(F, points: np.ndarray, j: int, q) -> np.ndarray:
    def integrand(zeta):
        return F(zeta) / (zeta - points)

    result = integrate_contour(
        integrand, F.geometry.boundary, q, decay=_boundary_decay(F), targets=points, legs=(j,)
    )
    return np.asarray(result.value, dtype=complex).reshape(-1) / TWO_PI_I


@dataclass
class MembershipReport:
    """Moments (1/2 pi i) integral F / (zeta - alpha) d zeta at probes of the opposite region."""

    side: Side
    probes: np.ndarray
    values: np.ndarray
    max_abs: float
    error_estimate: float


def default_probes(
    g: StripGeometry, region: Region, count: int = 8, seed: int | None = None
) -> np.ndarray:
    """
    Pseudo-random probes in Omega+ or Omega-, at distance >= min(0.5, sigma/2) from Gamma.

    Reproducible for a given seed.
    """
    seed = halfstrip_settings.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    distance = min(0.5, g.sigma / 2.0)
    sigma = g.sigma
    found = []
    while len(found) < count:
        if region is Region.OMEGA_PLUS:
            w = complex(rng.uniform(-sigma, sigma), rng.uniform(0.0, 4.0 * sigma + 2.0))
        else:
            w = complex(
                rng.uniform(-3.0 * sigma - 2.0, 3.0 * sigma + 2.0),
                rng.uniform(-3.0 * sigma - 2.0, 3.0 * sigma + 2.0),
            )
        if classify(w, g) is region and g.distance_to_boundary(w) >= distance:
            found.append(w)
    return np.array(found, dtype=complex)


def boundary_membership_test(
    F: BoundaryFunction,
    side: Side,
    probes: Sequence[complex] | None = None,
    q: QuadratureSpec | None = None,
    *,
    seed: int | None = None,
) -> MembershipReport:
    """
    Moments of F against the Cauchy kernel at probes in the opposite region.

    F is the trace of an H^p(Omega+) function exactly when the moments
    vanish at every probe in Omega- (and symmetrically for the minus side).

    Raises:
        DomainError: A probe is not in the opposite region
    """
    side = Side(side)
    g = F.geometry
    opposite = Region.OMEGA_MINUS if side is Side.PLUS else Region.OMEGA_PLUS
    if probes is None:
        probes = default_probes(g, opposite, seed=seed)
    probes = np.asarray(probes, dtype=complex).reshape(-1)
    for alpha in probes:
        region = classify(alpha, g)
        if region is not opposite:
            raise DomainError(f"probe {alpha} is in {region.value}, expected {opposite.value}")
    values, result = cauchy_transform(F, probes, q, full_output=True)
    values = np.asarray(values, dtype=complex).reshape(-1)
    return MembershipReport(
        side=side,
        probes=probes,
        values=values,
        max_abs=float(np.max(np.abs(values))) if values.size else 0.0,
        error_estimate=result.error_estimate,
    )


def orthogonality_pairing(
    F,
    G,
    c: ContourSpec | None = None,
    q: QuadratureSpec | None = None,
    *,
    full_output: bool = False,
):
    """The contour integral of F G d zeta over c (Gamma by default)."""
    if c is None:
        c = F.geometry.boundary
    decays = [getattr(H, "decay", None) for H in (F, G)]
    decay = None
    if all(isinstance(d, Decay) for d in decays):
        product = decays[0].times(decays[1])
        decay = Decay(product.kind, product.rate, None) if not product.is_zero else product

    def integrand(zeta):
        return F(zeta) * G(zeta)

    result = integrate_contour(integrand, c, q, decay=decay)
    if full_output:
        return complex(result.value), result
    return complex(result.value)
