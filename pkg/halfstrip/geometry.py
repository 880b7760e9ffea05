"""
Geometry of the half-strip.

The half-strip of half-width sigma is Omega+ = {|Re w| < sigma, Im w > 0};
Omega- is the exterior of its closure.  Its boundary Gamma consists of three
legs: the ray {-sigma + iv : v > 0} traversed downward, the segment
[-sigma, sigma] left to right, and the ray {sigma + iv : v > 0} upward, so
that Omega+ lies on the left.  The same description with (s, t) in place of
(sigma, 0) gives the contours Gamma_{s,t} used to define the Hardy norms.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .settings import halfstrip_settings

logger = logging.getLogger(__name__)


class Region(str, Enum):
    """Classification of a point of the plane relative to the half-strip."""

    OMEGA_PLUS = "Omega+"
    OMEGA_MINUS = "Omega-"
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"
    GAMMA3 = "Gamma3"
    CORNER_LEFT = "Corner(-sigma)"
    CORNER_RIGHT = "Corner(+sigma)"

    @property
    def is_boundary(self) -> bool:
        return self not in (Region.OMEGA_PLUS, Region.OMEGA_MINUS)

    @property
    def is_corner(self) -> bool:
        return self in (Region.CORNER_LEFT, Region.CORNER_RIGHT)

    @property
    def leg(self) -> int | None:
        return {Region.GAMMA1: 1, Region.GAMMA2: 2, Region.GAMMA3: 3}.get(self)


class Side(str, Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Side.PLUS else -1


class Domain(str, Enum):
    """Open regions on which analytic functions are declared."""

    OMEGA_PLUS = "Omega+"
    OMEGA_MINUS = "Omega-"
    UPPER = "C+"
    LOWER = "C-"
    RIGHT_OF_LEFT_LINE = "Re>-sigma"
    LEFT_OF_RIGHT_LINE = "Re<sigma"
    LEFT_OF_LEFT_LINE = "Re<-sigma"
    RIGHT_OF_RIGHT_LINE = "Re>sigma"
    ENTIRE = "C"

    def contains(self, w, sigma: float):
        """
        Vectorised open-region membership.

        Args:
            w: Complex scalar or array
            sigma: Half-width of the strip

        Returns:
            bool or boolean array
        """
        w = np.asarray(w, dtype=complex)
        u, v = w.real, w.imag
        if self is Domain.OMEGA_PLUS:
            result = (np.abs(u) < sigma) & (v > 0)
        elif self is Domain.OMEGA_MINUS:
            result = (np.abs(u) > sigma) | (v < 0)
        elif self is Domain.UPPER:
            result = v > 0
        elif self is Domain.LOWER:
            result = v < 0
        elif self is Domain.RIGHT_OF_LEFT_LINE:
            result = u > -sigma
        elif self is Domain.LEFT_OF_RIGHT_LINE:
            result = u < sigma
        elif self is Domain.LEFT_OF_LEFT_LINE:
            result = u < -sigma
        elif self is Domain.RIGHT_OF_RIGHT_LINE:
            result = u > sigma
        else:
            result = np.isfinite(u) & np.isfinite(v)
        if result.ndim == 0:
            return bool(result)
        return result

    def covers(self, side: Side) -> bool:
        """Whether this domain contains Omega+ (side plus) or Omega- (side minus)."""
        if self is Domain.ENTIRE:
            return True
        if side is Side.PLUS:
            return self in (
                Domain.OMEGA_PLUS,
                Domain.UPPER,
                Domain.RIGHT_OF_LEFT_LINE,
                Domain.LEFT_OF_RIGHT_LINE,
            )
        return self is Domain.OMEGA_MINUS

    @classmethod
    def for_side(cls, side: Side) -> "Domain":
        return cls.OMEGA_PLUS if Side(side) is Side.PLUS else cls.OMEGA_MINUS


@dataclass(frozen=True)
class Leg:
    """
    One straight piece of a contour, parametrised by distance r from its anchor.

    The point at parameter r is ``anchor + direction * r`` and the oriented
    line element is ``orientation * direction * dr``.
    """

    index: int
    anchor: complex
    direction: complex
    orientation: int
    length: float

    def point(self, r):
        return self.anchor + self.direction * np.asarray(r, dtype=float)

    @property
    def element(self) -> complex:
        return self.orientation * self.direction

    @property
    def is_ray(self) -> bool:
        return np.isinf(self.length)


@dataclass(frozen=True)
class ContourSpec:
    """
    The contour Gamma_{s,t}: boundary of D_{s,t} = {|u| < s, v > t}.

    Oriented with D_{s,t} on the left.  Arc length b is measured from the
    midpoint of the horizontal leg, negative toward leg 1.
    """

    s: float
    t: float = 0.0

    def __post_init__(self):
        if not self.s > 0 or not np.isfinite(self.s):
            raise DomainError(f"contour half-width must be positive and finite, got s={self.s}")
        if not np.isfinite(self.t):
            raise DomainError(f"contour height must be finite, got t={self.t}")

    @property
    def corners(self) -> tuple[complex, complex]:
        return complex(-self.s, self.t), complex(self.s, self.t)

    @property
    def legs(self) -> tuple[Leg, Leg, Leg]:
        left, right = self.corners
        return (
            Leg(1, left, 1j, -1, np.inf),
            Leg(2, left, 1.0 + 0j, 1, 2.0 * self.s),
            Leg(3, right, 1j, 1, np.inf),
        )

    def leg(self, index: int) -> Leg:
        return self.legs[index - 1]

    def point(self, b):
        return contour_point(b, self)


@dataclass(frozen=True)
class LineSpec:
    """A full straight line ``anchor + direction * r``, r in R, oriented by direction."""

    anchor: complex
    direction: complex
    name: str = ""

    def point(self, r):
        return self.anchor + self.direction * np.asarray(r, dtype=float)

    def distance(self, w) -> np.ndarray:
        rel = (np.asarray(w, dtype=complex) - self.anchor) * np.conj(self.direction)
        return np.abs(rel.imag)

    def coordinate(self, w) -> np.ndarray:
        rel = (np.asarray(w, dtype=complex) - self.anchor) * np.conj(self.direction)
        return rel.real


@dataclass(frozen=True)
class StripGeometry:
    """Half-strip of half-width sigma, with the snap tolerance used by classify."""

    sigma: float = 1.0
    snap_tolerance: float = field(default_factory=lambda: halfstrip_settings.SNAP_TOLERANCE)

    def __post_init__(self):
        if not self.sigma > 0 or not np.isfinite(self.sigma):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma}")

    @property
    def boundary(self) -> ContourSpec:
        """Gamma = Gamma_{sigma,0}."""
        return ContourSpec(self.sigma, 0.0)

    @property
    def corners(self) -> tuple[complex, complex]:
        return complex(-self.sigma, 0.0), complex(self.sigma, 0.0)

    def classify(self, w) -> Region:
        return classify(w, self)

    def contains(self, domain: Domain, w):
        return Domain(domain).contains(w, self.sigma)

    def distance_to_boundary(self, w):
        """Euclidean distance from w to Gamma (vectorised)."""
        w = np.asarray(w, dtype=complex)
        u, v = w.real, w.imag
        sigma = self.sigma
        d_segment = np.hypot(np.clip(np.abs(u) - sigma, 0.0, None), v)
        d_left = np.hypot(u + sigma, np.clip(-v, 0.0, None))
        d_right = np.hypot(u - sigma, np.clip(-v, 0.0, None))
        return np.minimum(d_segment, np.minimum(d_left, d_right))


def _snap(w: complex, tolerance: float) -> float:
    return tolerance * max(1.0, abs(w))


def classify(w: complex, g: StripGeometry) -> Region:
    """
    Classify a point relative to the half-strip.

    Points within ``snap_tolerance * max(1, |w|)`` of Gamma are classified onto it.

    Args:
        w: The point
        g: Strip geometry

    Returns:
        Exactly one Region tag
    """
    w = complex(w)
    u, v = w.real, w.imag
    sigma = g.sigma
    eps = _snap(w, g.snap_tolerance)

    if abs(v) <= eps:
        if abs(u + sigma) <= eps:
            return Region.CORNER_LEFT
        if abs(u - sigma) <= eps:
            return Region.CORNER_RIGHT
        if abs(u) < sigma:
            return Region.GAMMA2
    if v > 0:
        if abs(u + sigma) <= eps:
            return Region.GAMMA1
        if abs(u - sigma) <= eps:
            return Region.GAMMA3
        if abs(u) < sigma:
            return Region.OMEGA_PLUS
    return Region.OMEGA_MINUS


def contour_point(b, c: ContourSpec):
    """
    Point of Gamma_{s,t} at signed arc length b (vectorised).

    b = 0 is the midpoint of the horizontal leg; b < -s runs up leg 1 and
    b > s runs up leg 3.
    """
    b = np.asarray(b, dtype=float)
    s, t = c.s, c.t
    result = np.where(
        b < -s,
        -s + 1j * (t + (-b - s)),
        np.where(b > s, s + 1j * (t + (b - s)), b + 1j * t),
    )
    if result.ndim == 0:
        return complex(result)
    return result


def contour_leg(zeta: complex, c: ContourSpec, tolerance: float | None = None) -> int:
    """
    Leg index of a point of Gamma_{s,t}; the corners belong to leg 2.

    Raises:
        DomainError: zeta is not on the contour
    """
    if tolerance is None:
        tolerance = halfstrip_settings.SNAP_TOLERANCE
    zeta = complex(zeta)
    eps = _snap(zeta, tolerance)
    u, v = zeta.real, zeta.imag
    if abs(v - c.t) <= eps and abs(u) <= c.s + eps:
        return 2
    if v > c.t:
        if abs(u + c.s) <= eps:
            return 1
        if abs(u - c.s) <= eps:
            return 3
    raise DomainError(f"point {zeta} is not on the contour Gamma_(s={c.s}, t={c.t})")


def contour_parameter(zeta: complex, c: ContourSpec) -> float:
    """Inverse of contour_point: the signed arc length of a point on the contour."""
    leg = contour_leg(zeta, c)
    zeta = complex(zeta)
    if leg == 1:
        return -c.s - (zeta.imag - c.t)
    if leg == 3:
        return c.s + (zeta.imag - c.t)
    return float(np.clip(zeta.real, -c.s, c.s))


def line(j: int, g: StripGeometry) -> LineSpec:
    """
    The full line containing leg j of Gamma, with the leg's orientation.

    gamma_1 = {Re w = -sigma} downward, gamma_2 = R left to right,
    gamma_3 = {Re w = sigma} upward.
    """
    if j == 1:
        return LineSpec(complex(-g.sigma, 0.0), -1j, "gamma1")
    if j == 2:
        return LineSpec(0j, 1.0 + 0j, "gamma2")
    if j == 3:
        return LineSpec(complex(g.sigma, 0.0), 1j, "gamma3")
    raise DomainError(f"line index must be 1, 2 or 3, got {j}")


def halfplane_line(domain: Domain, offset: float, g: StripGeometry) -> LineSpec:
    """
    Line parallel to the boundary of a half-plane, at distance offset inside it.

    Oriented with the half-plane on the left, matching the leg orientations.
    """
    if offset <= 0:
        raise DomainError(f"offset must be positive, got {offset}")
    sigma = g.sigma
    lines = {
        Domain.UPPER: LineSpec(complex(0.0, offset), 1.0 + 0j, "Im=+"),
        Domain.LOWER: LineSpec(complex(0.0, -offset), -1.0 + 0j, "Im=-"),
        Domain.RIGHT_OF_LEFT_LINE: LineSpec(complex(-sigma + offset, 0.0), -1j, "Re>-sigma"),
        Domain.LEFT_OF_RIGHT_LINE: LineSpec(complex(sigma - offset, 0.0), 1j, "Re<sigma"),
        Domain.LEFT_OF_LEFT_LINE: LineSpec(complex(-sigma - offset, 0.0), 1j, "Re<-sigma"),
        Domain.RIGHT_OF_RIGHT_LINE: LineSpec(complex(sigma + offset, 0.0), -1j, "Re>sigma"),
    }
    try:
        return lines[Domain(domain)]
    except KeyError:
        raise DomainError(f"{domain} is not a half-plane") from None


def _leg_on_gamma_st(zeta: complex, s: float, t: float, g: StripGeometry) -> int:
    eps = _snap(zeta, g.snap_tolerance)
    u, v = zeta.real, zeta.imag
    if abs(v) <= eps and abs(u) <= s + eps:
        return 2
    if v > t:
        if abs(u + g.sigma) <= eps:
            return 1
        if abs(u - g.sigma) <= eps:
            return 3
    raise DomainError(f"point {zeta} is not on gamma_(s={s}, t={t}) for sigma={g.sigma}")


def translate_p(zeta: complex, s: float, t: float, g: StripGeometry) -> complex:
    """
    Translation P_{s,t} from gamma_{s,t} onto Gamma_{s,t}, leg by leg.

    gamma_{s,t} consists of {Re = -sigma, Im > t}, R with |u| <= s and
    {Re = sigma, Im > t}.  Points lying on two legs are treated as leg 2.

    Raises:
        DomainError: zeta is not on gamma_{s,t}
    """
    zeta = complex(zeta)
    leg = _leg_on_gamma_st(zeta, s, t, g)
    if leg == 1:
        return zeta + (g.sigma - s)
    if leg == 2:
        return zeta + 1j * t
    return zeta - (g.sigma - s)


def translate_p_inv(zeta: complex, s: float, t: float, g: StripGeometry) -> complex:
    """Inverse of translate_p: from Gamma_{s,t} back to gamma_{s,t}."""
    zeta = complex(zeta)
    leg = contour_leg(zeta, ContourSpec(s, t), g.snap_tolerance)
    if leg == 1:
        return zeta - (g.sigma - s)
    if leg == 2:
        return zeta - 1j * t
    return zeta + (g.sigma - s)


_BISECTORS = {1: 1.0 + 0j, 2: 1j, 3: -1.0 + 0j}


@dataclass(frozen=True)
class Cone:
    """
    Approach cone with vertex on Gamma minus the corners.

    For side plus the cone is ``vertex + K`` and for side minus
    ``vertex - K``, where K depends on the vertex leg:
    leg 1 {x > 0, |y| < alpha x}, leg 2 {y > 0, |x| < alpha y},
    leg 3 {x < 0, |y| < -alpha x}.
    """

    vertex: complex
    alpha: float
    side: Side
    geometry: StripGeometry

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"cone aperture must be positive, got {self.alpha}")
        object.__setattr__(self, "side", Side(self.side))
        region = classify(self.vertex, self.geometry)
        if region.is_corner:
            raise DomainError(f"cones are not defined at the corner {self.vertex}")
        if not region.is_boundary:
            raise DomainError(f"cone vertex {self.vertex} is not on Gamma ({region.value})")

    @property
    def leg(self) -> int:
        return classify(self.vertex, self.geometry).leg

    @property
    def bisector(self) -> complex:
        return self.side.sign * _BISECTORS[self.leg]

    def approach_point(self, r):
        return self.vertex + self.bisector * np.asarray(r, dtype=float)

    def contains(self, w) -> bool:
        return cone_contains(self, w)


def cone_contains(k: Cone, w: complex) -> bool:
    """Open membership of w in the cone; the vertex itself is not a member."""
    d = complex(w) - k.vertex if k.side is Side.PLUS else k.vertex - complex(w)
    x, y = d.real, d.imag
    leg = k.leg
    if leg == 1:
        return x > 0 and abs(y) < k.alpha * x
    if leg == 2:
        return y > 0 and abs(x) < k.alpha * y
    return x < 0 and abs(y) < -k.alpha * x


def _is_corner_parameter(b0: float, g: StripGeometry) -> bool:
    return abs(abs(b0) - g.sigma) <= _snap(b0, g.snap_tolerance)


def chord_arc_constant(b0: float, g: StripGeometry) -> float:
    """
    Constant C with |zeta(b) - zeta(b0)| >= C |b - b0| for every b.

    Raises:
        DomainError: b0 is the parameter of a corner
    """
    if _is_corner_parameter(b0, g):
        raise DomainError(f"chord-arc constant is undefined at the corner parameter b0={b0}")
    return min(g.sigma / np.hypot(b0, g.sigma), 1.0 / np.sqrt(2.0))


def kernel_radius(zeta0: complex, g: StripGeometry) -> float:
    """
    Radius delta(zeta0) under which the symmetric kernel obeys the cone bound.

    Half the distance from zeta0 to the nearest corner, capped by sigma.
    """
    region = classify(zeta0, g)
    if region.is_corner or not region.is_boundary:
        raise DomainError(f"kernel radius needs a non-corner point of Gamma, got {zeta0}")
    left, right = g.corners
    nearest = min(abs(complex(zeta0) - left), abs(complex(zeta0) - right))
    return 0.5 * min(nearest, 2.0 * g.sigma)


def exhaustion_curve(n: int, g: StripGeometry) -> np.ndarray:
    """
    Vertices of the closed polygon bounding D_{s_n,t_n} cut at Im w = n.

    s_n = n sigma / (n + 1), t_n = 1 / (n + 1).  Counter-clockwise,
    first vertex repeated at the end.
    """
    if n < 1:
        raise DomainError(f"exhaustion index must be at least 1, got {n}")
    s = n * g.sigma / (n + 1)
    t = 1.0 / (n + 1)
    return np.array(
        [complex(-s, t), complex(s, t), complex(s, n), complex(-s, n), complex(-s, t)]
    )
