"""
Conformal maps between the half-planes and the half-strip regions.

Phi+ = (2 sigma / pi) arcsin maps C+ onto Omega+ with Phi+(+-1) = +-sigma and
Phi+(0) = 0; its inverse is Psi+ = sin(pi w / 2 sigma).  Phi- is the
Schwarz-Christoffel map (4 sigma / pi) integral_0^z sqrt(1 - x^2) dx of C-
onto Omega-, in closed form (2 sigma / pi)(z sqrt(1 - z^2) + arcsin z); Psi-
has no closed form and is computed by safeguarded Newton iteration.

The square root sqrt(1 - z^2) is taken with arg(1 - z) in (-pi, 0) on C+
and in (0, pi) on C-.  Real arguments are read as limits from the side of
the map.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from scipy import integrate, optimize

from .cauchy import AnalyticFunction
from .exceptions import DomainError, InversionError, SingularityError
from .geometry import Domain, Side, StripGeometry
from .quadrature import Decay, QuadratureSpec, integrate_ray
from .settings import halfstrip_settings

logger = logging.getLogger(__name__)

_NEWTON_MAX_ITERATIONS = 60
_NEWTON_TOLERANCE = 1e-13
_HOMOTOPY_STEPS = 16
_SUBSTITUTION_REACH = 40.0


def _scalar_or_array(result, z):
    if np.ndim(z) == 0:
        return complex(np.asarray(result).reshape(-1)[0])
    return result


def _boundary_signed(z, side: Side) -> np.ndarray:
    """Return z with imaginary parts 0 replaced by +0.0 (plus) or -0.0 (minus)."""
    z = np.asarray(z, dtype=complex)
    zero = 0.0 if side is Side.PLUS else -0.0
    y = np.where(z.imag == 0, zero, z.imag)
    signed = np.empty_like(z)
    signed.real = z.real
    signed.imag = y
    return signed, z.real, y


def _check_halfplane(z, side: Side) -> None:
    imag = np.asarray(z, dtype=complex).imag
    if side is Side.PLUS and np.any(imag < 0):
        raise DomainError("Phi+ is defined on the closed upper half-plane")
    if side is Side.MINUS and np.any(imag > 0):
        raise DomainError("Phi- is defined on the closed lower half-plane")


def branch_sqrt(z, side: Side = Side.PLUS):
    """
    sqrt(1 - z^2) on the closed upper (plus) or lower (minus) half-plane.

    Computed as sqrt|1 - z| sqrt|1 + z| exp(i (arg(1 - z) + arg(1 + z)) / 2)
    so that large |z| does not overflow.
    """
    side = Side(side)
    _z, x, y = _boundary_signed(z, side)
    a1 = np.arctan2(-y, 1.0 - x)
    a2 = np.arctan2(y, 1.0 + x)
    modulus = np.sqrt(np.hypot(1.0 - x, y)) * np.sqrt(np.hypot(1.0 + x, y))
    return modulus * np.exp(0.5j * (a1 + a2))


def branch_arcsin(z, side: Side = Side.PLUS):
    """arcsin z = -i log(iz + sqrt(1 - z^2)) with the half-plane branch of the root."""
    side = Side(side)
    signed, _x, _y = _boundary_signed(z, side)
    root = branch_sqrt(signed, side)
    first = 1j * signed + root
    second = root - 1j * signed
    # first * second = 1; take the logarithm of the larger one.
    with np.errstate(divide="ignore"):
        return np.where(
            np.abs(first) >= np.abs(second),
            -1j * np.log(first),
            1j * np.log(second),
        )


def phi_plus(z, sigma: float = 1.0):
    """Phi+(z) = (2 sigma / pi) arcsin z, mapping closed C+ onto closed Omega+."""
    _check_halfplane(z, Side.PLUS)
    result = (2.0 * sigma / np.pi) * branch_arcsin(z, Side.PLUS)
    return _scalar_or_array(result, z)


def phi_plus_prime(z, sigma: float = 1.0):
    """
    Phi+'(z) = (2 sigma / pi) (1 - z^2)^(-1/2).

    Raises:
        SingularityError: z = +-1
    """
    _check_halfplane(z, Side.PLUS)
    root = branch_sqrt(z, Side.PLUS)
    if np.any(root == 0):
        raise SingularityError("Phi+' is singular at the branch points z = +-1")
    return _scalar_or_array((2.0 * sigma / np.pi) / root, z)


def psi_plus(w, sigma: float = 1.0):
    """Psi+(w) = sin(pi w / 2 sigma), the inverse of Phi+."""
    return _scalar_or_array(np.sin(np.pi * np.asarray(w, dtype=complex) / (2.0 * sigma)), w)


def psi_plus_prime(w, sigma: float = 1.0):
    scale = np.pi / (2.0 * sigma)
    return _scalar_or_array(scale * np.cos(scale * np.asarray(w, dtype=complex)), w)


def phi_minus(z, sigma: float = 1.0):
    """Phi-(z) = (2 sigma / pi)(z sqrt(1 - z^2) + arcsin z) on closed C-."""
    _check_halfplane(z, Side.MINUS)
    signed, _x, _y = _boundary_signed(z, Side.MINUS)
    result = (2.0 * sigma / np.pi) * (
        signed * branch_sqrt(signed, Side.MINUS) + branch_arcsin(signed, Side.MINUS)
    )
    return _scalar_or_array(result, z)


def phi_minus_prime(z, sigma: float = 1.0):
    """Phi-'(z) = (4 sigma / pi) sqrt(1 - z^2); vanishes at z = +-1."""
    _check_halfplane(z, Side.MINUS)
    return _scalar_or_array((4.0 * sigma / np.pi) * branch_sqrt(z, Side.MINUS), z)


def _in_closed_region(w: complex, side: Side, sigma: float) -> bool:
    eps = halfstrip_settings.SNAP_TOLERANCE * max(1.0, abs(w))
    u, v = w.real, w.imag
    inside_plus = abs(u) < sigma - eps and v > eps
    if side is Side.PLUS:
        return abs(u) <= sigma + eps and v >= -eps
    return not inside_plus


def _residual(z: complex, w: complex, sigma: float) -> complex:
    return complex(phi_minus(z, sigma)) - w


def _project(z: complex) -> complex:
    return complex(z.real, min(z.imag, 0.0))


def _newton(w: complex, z: complex, sigma: float, tolerance: float) -> tuple[complex, float]:
    """Damped Newton on Phi-(z) = w, projected onto the closed lower half-plane."""
    residual = _residual(z, w, sigma)
    for iteration in range(_NEWTON_MAX_ITERATIONS):
        if abs(residual) <= tolerance:
            logger.debug(f"Psi-({w}): converged after {iteration} Newton steps")
            return z, abs(residual)
        slope = complex(phi_minus_prime(z, sigma))
        if slope == 0:
            break
        step = residual / slope
        damping = 1.0
        while damping > 1e-6:
            candidate = _project(z - damping * step)
            candidate_residual = _residual(candidate, w, sigma)
            if abs(candidate_residual) < abs(residual):
                break
            damping *= 0.5
        else:
            break
        z, residual = candidate, candidate_residual
    return z, abs(residual)


def _initial_guesses(w: complex, sigma: float) -> list[complex]:
    near = _project(np.pi * w / (4.0 * sigma))
    root = np.sqrt(np.pi * w / (2.0 * sigma * 1j))
    far = root if root.imag <= 0 else -root
    return [near, _project(far)]


def _imaginary_axis(w: complex, sigma: float, tolerance: float) -> complex | None:
    target = w.imag

    def gap(y):
        return complex(phi_minus(complex(0.0, -y), sigma)).imag - target

    upper = 1.0
    while gap(upper) > 0 and upper < 1e150:
        upper *= 2.0
    if gap(upper) > 0:
        return None
    y = optimize.brentq(gap, 0.0, upper, xtol=tolerance, rtol=4 * np.finfo(float).eps)
    return complex(0.0, -y)


def _psi_minus_scalar(w: complex, sigma: float) -> complex:
    w = complex(w)
    if not _in_closed_region(w, Side.MINUS, sigma):
        raise DomainError(f"Psi- is defined on the closure of Omega-, got {w}")
    if w == 0:
        return 0j
    for corner, value in ((sigma, 1.0), (-sigma, -1.0)):
        if w == corner:
            return complex(value, -0.0)
    tolerance = _NEWTON_TOLERANCE * max(1.0, abs(w))

    best, best_residual = None, np.inf
    for guess in _initial_guesses(w, sigma):
        z, residual = _newton(w, guess, sigma, tolerance)
        if residual < best_residual:
            best, best_residual = z, residual
    if best_residual <= tolerance:
        return best

    z = 0j
    for k in range(1, _HOMOTOPY_STEPS + 1):
        z, best_residual = _newton(w * k / _HOMOTOPY_STEPS, z, sigma, tolerance)
    if best_residual <= tolerance:
        return z

    if w.real == 0 and w.imag < 0:
        z = _imaginary_axis(w, sigma, tolerance)
        if z is not None:
            return z
    raise InversionError(f"Newton inversion of Phi- failed at w={w}", residual=best_residual)


def psi_minus(w, sigma: float = 1.0):
    """
    Psi- = Phi-^(-1) on the closure of Omega-.

    Raises:
        DomainError: w in Omega+
        InversionError: Newton and its fallbacks do not converge
    """
    points = np.atleast_1d(np.asarray(w, dtype=complex))
    result = np.array([_psi_minus_scalar(x, sigma) for x in points.reshape(-1)]).reshape(
        points.shape
    )
    return _scalar_or_array(result, w)


def psi_minus_prime(w, sigma: float = 1.0):
    """Psi-'(w) = 1 / Phi-'(Psi-(w))."""
    z = psi_minus(w, sigma)
    slope = np.asarray(phi_minus_prime(z, sigma))
    if np.any(slope == 0):
        raise SingularityError("Psi-' is singular at the corners w = +-sigma")
    return _scalar_or_array(1.0 / slope, w)


@dataclass(frozen=True)
class BranchedMap:
    """One of the two conformal maps with its derivative, inverse and branch rule."""

    side: Side
    sigma: float
    forward: Callable
    derivative: Callable
    inverse: Callable
    inverse_derivative: Callable
    source: Domain
    target: Domain
    branch: str


def branched_map(side: Side, geometry: StripGeometry | None = None) -> BranchedMap:
    side = Side(side)
    sigma = (geometry or StripGeometry()).sigma
    if side is Side.PLUS:
        return BranchedMap(
            side=side,
            sigma=sigma,
            forward=partial(phi_plus, sigma=sigma),
            derivative=partial(phi_plus_prime, sigma=sigma),
            inverse=partial(psi_plus, sigma=sigma),
            inverse_derivative=partial(psi_plus_prime, sigma=sigma),
            source=Domain.UPPER,
            target=Domain.OMEGA_PLUS,
            branch="arg(1 - z) in (-pi, 0)",
        )
    return BranchedMap(
        side=side,
        sigma=sigma,
        forward=partial(phi_minus, sigma=sigma),
        derivative=partial(phi_minus_prime, sigma=sigma),
        inverse=partial(psi_minus, sigma=sigma),
        inverse_derivative=partial(psi_minus_prime, sigma=sigma),
        source=Domain.LOWER,
        target=Domain.OMEGA_MINUS,
        branch="arg(1 - z) in (0, pi)",
    )


def _check_exponent(p: float) -> float:
    p = float(p)
    if not 0 < p < np.inf:
        raise DomainError(f"T needs 0 < p < inf, got {p}")
    return p


def _side_of(F, side) -> Side:
    if side is not None:
        return Side(side)
    return Side.MINUS if F.domain is Domain.OMEGA_MINUS else Side.PLUS


def transform_T(F: AnalyticFunction, p: float, side: Side | None = None) -> AnalyticFunction:
    """
    T F(z) = F(Phi(z)) Phi'(z)^(1/p), an isometry-up-to-constants onto H^p(C+-).

    The power uses the principal branch; Re Phi' > 0 off the real axis keeps
    it single valued.
    """
    p = _check_exponent(p)
    side = _side_of(F, side)
    conformal = branched_map(side, F.geometry)

    def evaluate(z):
        w = conformal.forward(z)
        weight = np.power(np.asarray(conformal.derivative(z), dtype=complex), 1.0 / p)
        return _scalar_or_array(np.asarray(F.evaluate(w, check=False)) * weight, z)

    return AnalyticFunction(
        evaluate, conformal.source, F.geometry, name=f"T[{F.name or 'F'}]"
    )


def transform_T_inv(f: AnalyticFunction, p: float, side: Side | None = None) -> AnalyticFunction:
    """T^-1 f(w) = f(Psi(w)) Psi'(w)^(1/p) on Omega+-."""
    p = _check_exponent(p)
    if side is None:
        side = Side.MINUS if f.domain is Domain.LOWER else Side.PLUS
    side = Side(side)
    conformal = branched_map(side, f.geometry)

    def evaluate(w):
        z = conformal.inverse(w)
        weight = np.power(np.asarray(conformal.inverse_derivative(w), dtype=complex), 1.0 / p)
        return _scalar_or_array(np.asarray(f.evaluate(z, check=False)) * weight, w)

    return AnalyticFunction(
        evaluate, conformal.target, f.geometry, name=f"T^-1[{f.name or 'f'}]"
    )


@dataclass
class SignReport:
    """Violations of Re Phi' > 0, x Im Phi' > 0 (x != 0) and Im Phi'(iy) = 0."""

    checked: int
    skipped: int
    violations: list = field(default_factory=list)
    max_axis_imag: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations


def derivative_sign_report(
    samples: Sequence[complex], sigma: float = 1.0, axis_tolerance: float = 1e-12
) -> SignReport:
    """
    Check the sign pattern of Phi+' on C+ samples and Phi-' on C- samples.

    Real samples are skipped.
    """
    report = SignReport(checked=0, skipped=0)
    for z in np.asarray(samples, dtype=complex).reshape(-1):
        if z.imag == 0:
            report.skipped += 1
            continue
        derivative = complex(
            phi_plus_prime(z, sigma) if z.imag > 0 else phi_minus_prime(z, sigma)
        )
        report.checked += 1
        if not derivative.real > 0:
            report.violations.append((complex(z), "Re Phi' <= 0", derivative))
        if z.real == 0:
            relative = abs(derivative.imag) / max(abs(derivative), 1e-300)
            report.max_axis_imag = max(report.max_axis_imag, relative)
            if relative > axis_tolerance:
                report.violations.append((complex(z), "Im Phi'(iy) != 0", derivative))
        elif not z.real * derivative.imag > 0:
            report.violations.append((complex(z), "x Im Phi' <= 0", derivative))
    return report


def _substituted(func: Callable, y: float) -> Callable:
    """func(x + iy) dx rewritten in the variable x = sinh(u)."""

    def g(u):
        return func(complex(np.sinh(u), y)) * np.cosh(u)

    return g


def _ray_tail(F_power: Callable, start: complex, decay: Decay | None, q: QuadratureSpec | None):
    result = integrate_ray(F_power, start, 1j, q, decay=decay, arc_length=True)
    return float(np.real(result.value)), result.error_estimate


def transformed_line_norm(
    F: AnalyticFunction,
    p: float,
    y: float,
    side: Side | None = None,
    q: QuadratureSpec | None = None,
) -> float:
    """
    ||T F(. + iy)||_{L^p(R)}, computed along the image of the line under Phi.

    |T F|^p dx = |F(w)|^p |dw| on the image curve.  On the plus side the image
    is asymptotic to the rays Re w = +-sigma, and the part beyond x = sinh(40)
    is integrated along those rays.
    """
    p = _check_exponent(p)
    side = _side_of(F, side)
    if side.sign * y <= 0:
        raise DomainError(f"line Im z = {y} is not inside the {side.value} half-plane")
    conformal = branched_map(side, F.geometry)

    def density(z):
        w = conformal.forward(z)
        return abs(complex(F.evaluate(w, check=False))) ** p * abs(complex(conformal.derivative(z)))

    q = q or QuadratureSpec()
    g = _substituted(density, y)
    reach = _SUBSTITUTION_REACH
    total = 0.0
    for a, b in ((-reach, 0.0), (0.0, reach)):
        value, _error = integrate.quad(
            g, a, b, limit=q.max_subdivisions, epsabs=q.abs_tol, epsrel=q.rel_tol
        )
        total += value

    if side is Side.PLUS:
        decay = getattr(F, "decay", None)
        power_decay = decay.power(p) if isinstance(decay, Decay) else None

        def power(w):
            return np.abs(np.asarray(F.evaluate(w, check=False), dtype=complex)) ** p

        for x in (-np.sinh(reach), np.sinh(reach)):
            top = complex(conformal.forward(complex(x, y)))
            start = complex(np.sign(x) * F.geometry.sigma, top.imag)
            tail, _err = _ray_tail(power, start, power_decay, q)
            total += tail
    return total ** (1.0 / p)


def transformed_norm_estimate(
    F: AnalyticFunction,
    p: float,
    heights: Sequence[float] | None = None,
    side: Side | None = None,
    q: QuadratureSpec | None = None,
) -> float:
    """
    Sup over lines Im z = y of the transformed line norms: ||T F||_{H^p(C+-)}.

    Default heights are +-2^-e for e = 0..12.
    """
    side = _side_of(F, side)
    if heights is None:
        heights = side.sign * 2.0 ** -np.arange(0, 13)
    return max(transformed_line_norm(F, p, y, side, q) for y in heights)


@dataclass
class KernelBoundReport:
    """Restricted integrals of |Phi'| / |Phi - alpha|^q per height, against their bound."""

    alpha: complex
    eps: float
    q_exp: float
    heights: list
    integrals: list
    bound: float
    side: Side

    @property
    def max_ratio(self) -> float:
        return max((value / self.bound for value in self.integrals), default=0.0)

    @property
    def violations(self) -> int:
        return sum(value > self.bound for value in self.integrals)


def kernel_bound_constant(eps: float, q_exp: float) -> float:
    """3 2^(q+1) / ((q - 1) eps^(q - 1))."""
    return 3.0 * 2.0 ** (q_exp + 1.0) / ((q_exp - 1.0) * eps ** (q_exp - 1.0))


def _restricted_pieces(distance: Callable, eps: float, reach: float) -> list[tuple[float, float]]:
    """Sub-intervals of [-reach, reach] where distance(u) >= eps."""
    grid = np.linspace(-reach, reach, 8001)
    gaps = np.asarray(distance(grid), dtype=float) - eps
    cuts = [grid[0]]
    for a, b, ga, gb in zip(grid[:-1], grid[1:], gaps[:-1], gaps[1:], strict=True):
        if ga == 0:
            cuts.append(a)
        elif ga * gb < 0:
            cuts.append(optimize.brentq(lambda u: distance(u) - eps, a, b, xtol=1e-14))
    cuts.append(grid[-1])
    pieces = []
    for a, b in zip(cuts[:-1], cuts[1:], strict=True):
        if b > a and distance(0.5 * (a + b)) >= eps:
            pieces.append((a, b))
    return pieces


def conformal_kernel_bound_check(
    alpha: complex,
    eps: float,
    q_exp: float,
    heights: Sequence[float],
    sigma: float = 1.0,
    side: Side = Side.PLUS,
) -> KernelBoundReport:
    """
    For each height y, the integral over E_y = {t : |Phi(t+iy) - alpha| >= eps} of
    |Phi'(t+iy)| / |Phi(t+iy) - alpha|^q dt, against 3 2^(q+1) / ((q-1) eps^(q-1)).

    On the minus side the heights are negative.

    Raises:
        DomainError: eps <= 0, q <= 1 or a height on the wrong side
    """
    side = Side(side)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if not q_exp > 1:
        raise DomainError(f"q must exceed 1, got {q_exp}")
    alpha = complex(alpha)
    conformal = branched_map(side, StripGeometry(sigma))
    reach = _SUBSTITUTION_REACH
    integrals = []
    for y in heights:
        if side.sign * y <= 0:
            raise DomainError(f"height {y} is not inside the {side.value} half-plane")

        def distance(u, y=y):
            return np.abs(np.asarray(conformal.forward(np.sinh(u) + 1j * y)) - alpha)

        def density(u, y=y):
            z = complex(np.sinh(u), y)
            w = complex(conformal.forward(z))
            return abs(complex(conformal.derivative(z))) / abs(w - alpha) ** q_exp * np.cosh(u)

        total = 0.0
        for a, b in _restricted_pieces(distance, eps, reach):
            value, _error = integrate.quad(density, a, b, limit=400)
            total += value
        if side is Side.PLUS:
            for x in (-np.sinh(reach), np.sinh(reach)):
                top = complex(conformal.forward(complex(x, y)))
                start = complex(np.sign(x) * sigma, top.imag)

                def ray(v, start=start):
                    d = abs(start + 1j * v - alpha)
                    return d**-q_exp if d >= eps else 0.0

                tail, _error = integrate.quad(ray, 0.0, np.inf, limit=200)
                total += tail
        integrals.append(float(total))
    return KernelBoundReport(
        alpha=alpha,
        eps=float(eps),
        q_exp=float(q_exp),
        heights=[float(y) for y in heights],
        integrals=integrals,
        bound=kernel_bound_constant(eps, q_exp),
        side=side,
    )


def schwarz_christoffel_quadrature(
    z: complex, side: Side = Side.PLUS, sigma: float = 1.0
) -> complex:
    """
    Phi+-(z) by direct quadrature of its defining integral along [0, z].

    Plus: (2 sigma / pi) integral_0^z (1 - x^2)^(-1/2) dx.
    Minus: (4 sigma / pi) integral_0^z (1 - x^2)^(1/2) dx.
    """
    side = Side(side)
    z = complex(z)
    _check_halfplane(z, side)
    if side is Side.PLUS:
        factor = 2.0 * sigma / np.pi

        def integrand(t):
            return z / complex(branch_sqrt(t * z, side))
    else:
        factor = 4.0 * sigma / np.pi

        def integrand(t):
            return z * complex(branch_sqrt(t * z, side))

    points = [1.0 / abs(z)] if z.imag == 0 and abs(z) > 1 else None
    kwargs = {"points": points} if points else {}
    options = {"limit": 400, "epsabs": 1e-14, "epsrel": 1e-13, **kwargs}
    real, _ = integrate.quad(lambda t: integrand(t).real, 0.0, 1.0, **options)
    imag, _ = integrate.quad(lambda t: integrand(t).imag, 0.0, 1.0, **options)
    return factor * complex(real, imag)
