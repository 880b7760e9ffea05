"""
Finite Blaschke products on the half-planes and on the half-strip regions.

On C+ the product with zeros z_n (and m zeros at i) is

    B(z) = ((z - i)/(z + i))^m  prod  c_n (z - z_n)/(z - conj(z_n)),
    c_n = |z_n^2 + 1| / (z_n^2 + 1),

and on C- the mirrored product uses ((z + i)/(z - i))^m with zeros in C-.
The Omega+ and Omega- versions are B(Psi+(w)) and B(Psi-(w)): zeros w_n in
Omega+- are carried to z_n = Psi+-(w_n).
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .conformal import phi_minus, phi_plus, psi_minus, psi_plus
from .exceptions import ContractError, DomainError, SingularityError
from .geometry import Domain, Region, StripGeometry, classify

logger = logging.getLogger(__name__)

SUMMABLE = "summable-evidence"
DIVERGENT = "divergent-evidence"

_SUPPORTED = (Domain.UPPER, Domain.LOWER, Domain.OMEGA_PLUS, Domain.OMEGA_MINUS)
_SPECIAL_TOLERANCE = 1e-12


def _is_upper(domain: Domain) -> bool:
    return domain in (Domain.UPPER, Domain.OMEGA_PLUS)


def _special_point(domain: Domain, sigma: float) -> complex:
    """The point carried to +-i: i, -i, Phi+(i) or Phi-(-i)."""
    if domain is Domain.UPPER:
        return 1j
    if domain is Domain.LOWER:
        return -1j
    if domain is Domain.OMEGA_PLUS:
        return complex(phi_plus(1j, sigma))
    return complex(phi_minus(-1j, sigma))


@dataclass
class BlaschkeProduct:
    """
    A finite Blaschke product.

    Zeros within 1e-12 of the special point (i on C+, -i on C-, and their
    images under Phi+- on Omega+-) are folded into m.
    """

    zeros: list = field(default_factory=list)
    m: int = 0
    domain: Domain = Domain.UPPER
    geometry: StripGeometry = field(default_factory=StripGeometry)

    def __post_init__(self):
        self.domain = Domain(self.domain)
        if self.domain not in _SUPPORTED:
            raise DomainError(
                f"Blaschke products live on C+, C-, Omega+ or Omega-, got {self.domain}"
            )
        if self.m < 0:
            raise DomainError(f"multiplicity at the special point must be >= 0, got {self.m}")
        special = _special_point(self.domain, self.geometry.sigma)
        folded, kept = 0, []
        for w in self.zeros:
            w = complex(w)
            if not self.domain.contains(w, self.geometry.sigma):
                raise DomainError(f"zero {w} is not inside {self.domain.value}")
            if abs(w - special) <= _SPECIAL_TOLERANCE * max(1.0, abs(special)):
                folded += 1
            else:
                kept.append(w)
        self.m, self.zeros = self.m + folded, kept

    @property
    def upper(self) -> bool:
        return _is_upper(self.domain)

    @property
    def plane_zeros(self) -> np.ndarray:
        """Zeros carried to the half-plane."""
        zeros = np.asarray(self.zeros, dtype=complex)
        if self.domain is Domain.OMEGA_PLUS:
            return np.asarray(psi_plus(zeros, self.geometry.sigma), dtype=complex)
        if self.domain is Domain.OMEGA_MINUS:
            return np.asarray(psi_minus(zeros, self.geometry.sigma), dtype=complex)
        return zeros

    @property
    def degree(self) -> int:
        return self.m + len(self.zeros)

    def to_plane(self, point):
        sigma = self.geometry.sigma
        if self.domain is Domain.OMEGA_PLUS:
            return psi_plus(point, sigma)
        if self.domain is Domain.OMEGA_MINUS:
            return psi_minus(point, sigma)
        return point

    def __call__(self, point):
        return blaschke_eval(self, point)

    def tail_estimate(self) -> float:
        """Tail bound of the zero sum; small values mean the truncation is harmless."""
        return convergence_criterion(self.zeros, self.domain, self.geometry).tail_estimate


def _check_closed(B: BlaschkeProduct, points: np.ndarray) -> None:
    g = B.geometry
    for w in points.reshape(-1):
        if B.domain is Domain.UPPER and w.imag < 0:
            raise DomainError(f"{w} is outside the closed upper half-plane")
        if B.domain is Domain.LOWER and w.imag > 0:
            raise DomainError(f"{w} is outside the closed lower half-plane")
        region = classify(w, g) if B.domain in (Domain.OMEGA_PLUS, Domain.OMEGA_MINUS) else None
        if B.domain is Domain.OMEGA_PLUS and region is Region.OMEGA_MINUS:
            raise DomainError(f"{w} is outside the closure of Omega+")
        if B.domain is Domain.OMEGA_MINUS and region is Region.OMEGA_PLUS:
            raise DomainError(f"{w} is outside the closure of Omega-")


def _unimodular(zeros: np.ndarray) -> np.ndarray:
    """|z^2 + 1| / (z^2 + 1) = exp(-i (arg(z - i) + arg(z + i)))."""
    return np.exp(-1j * (np.angle(zeros - 1j) + np.angle(zeros + 1j)))


def plane_product(z, zeros: Sequence[complex], m: int, upper: bool = True):
    """The half-plane Blaschke product at z (vectorised)."""
    z = np.asarray(z, dtype=complex)
    zeros = np.asarray(zeros, dtype=complex)
    special = 1j if upper else -1j
    if m:
        denominator = z + special
        if np.any(denominator == 0):
            raise SingularityError(f"Blaschke product evaluated at its pole {-special}")
        result = ((z - special) / denominator) ** m
    else:
        result = np.ones(z.shape, dtype=complex)
    for zero, c in zip(zeros, _unimodular(zeros), strict=True):
        denominator = z - np.conj(zero)
        if np.any(denominator == 0):
            raise SingularityError(
                f"Blaschke product evaluated at the reflected zero {np.conj(zero)}"
            )
        result = result * c * (z - zero) / denominator
    return result


def blaschke_eval(B: BlaschkeProduct, point):
    """
    B at a point of its closed domain; Omega+- versions compose with Psi+-.

    Raises:
        DomainError: point outside the closed domain
        SingularityError: point at a factor pole
    """
    points = np.asarray(point, dtype=complex)
    _check_closed(B, np.atleast_1d(points))
    z = np.asarray(B.to_plane(points), dtype=complex)
    result = plane_product(z, B.plane_zeros, B.m, B.upper)
    if np.ndim(point) == 0:
        return complex(result)
    return result


@dataclass
class ConvergenceReport:
    """Partial sums of the zero condition with a divergence heuristic."""

    sum: float
    partial_sums: list
    verdict: str
    tail_estimate: float

    @property
    def summable(self) -> bool:
        return self.verdict == SUMMABLE


def zero_terms(zeros: Sequence[complex], domain: Domain, geometry: StripGeometry | None = None):
    """
    Terms y_n / (1 + |z_n|^2) of the zero condition, with z_n carried to the half-plane.

    On C- (and Omega-) the terms are -y_n / (1 + |z_n|^2).
    """
    domain = Domain(domain)
    geometry = geometry or StripGeometry()
    zeros = np.asarray(list(zeros), dtype=complex)
    if zeros.size == 0:
        return np.zeros(0)
    if domain is Domain.OMEGA_PLUS:
        zeros = np.asarray(psi_plus(zeros, geometry.sigma), dtype=complex)
    elif domain is Domain.OMEGA_MINUS:
        zeros = np.asarray(psi_minus(zeros, geometry.sigma), dtype=complex)
    sign = 1.0 if _is_upper(domain) else -1.0
    return sign * zeros.imag / (1.0 + np.abs(zeros) ** 2)


def convergence_criterion(
    zeros: Sequence[complex], domain: Domain = Domain.UPPER, geometry: StripGeometry | None = None
) -> ConvergenceReport:
    """
    Partial sums of the zero condition and a verdict.

    The verdict is divergent when the mean of n a_n over the last quarter of
    the terms is at least half its mean over the second quarter (a harmonic
    tail keeps n a_n level).  Fewer than 8 terms are reported summable.
    """
    terms = zero_terms(zeros, domain, geometry)
    partial = np.cumsum(terms)
    total = float(partial[-1]) if partial.size else 0.0
    count = terms.size
    verdict = SUMMABLE
    tail = 0.0
    if count >= 8:
        n = np.arange(1, count + 1)
        weighted = n * terms
        quarter = count // 4
        second = np.mean(weighted[quarter : 2 * quarter])
        last = np.mean(weighted[count - quarter :])
        if second > 0 and last >= 0.5 * second:
            verdict = DIVERGENT
    if count >= 2 and terms[-2] > 0:
        ratio = terms[-1] / terms[-2]
        tail = float(terms[-1] * ratio / (1.0 - ratio)) if ratio < 1 else np.inf
    if verdict == DIVERGENT:
        tail = np.inf
        logger.info(f"zero condition partial sums grow like a harmonic series ({count} terms)")
    return ConvergenceReport(
        sum=total,
        partial_sums=[float(s) for s in partial],
        verdict=verdict,
        tail_estimate=tail,
    )


def _order(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


@dataclass
class FactorizationReport:
    """|F| against |F / B| at boundary probes, and the removable quotients at the zeros."""

    probes: np.ndarray
    modulus_gap: float
    quotient_limits: list
    quotient_spread: float

    @property
    def removable(self) -> bool:
        """F / B has a finite limit at every zero of B."""
        return self.quotient_spread <= 1e-2


def factorization_modulus_check(
    F,
    B: BlaschkeProduct,
    probes: Sequence[complex],
    *,
    known_zeros: Sequence[complex] | None = None,
    zero_tolerance: float = 1e-9,
    radius: float = 1e-5,
) -> FactorizationReport:
    """
    Check |F| = |F / B| at boundary probes and that F / B is finite at the zeros of B.

    Args:
        F: Callable analytic on the domain of B, continuous up to the boundary
        B: Blaschke product built from the zeros of F
        probes: Points of the boundary (R or Gamma), corners excluded
        known_zeros: Zeros of F in the domain, with multiplicity, if known
        zero_tolerance: Largest |F| accepted at a zero of B
        radius: Distance from a zero at which the quotient is sampled

    Raises:
        ContractError: B and F do not share their zeros
    """
    evaluate = F.evaluate if hasattr(F, "evaluate") else None

    def value(w):
        if evaluate is not None:
            return np.asarray(evaluate(w, check=False), dtype=complex)
        return np.asarray(F(w), dtype=complex)

    sigma = B.geometry.sigma
    b_zeros = list(B.zeros) + [_special_point(B.domain, sigma)] * B.m
    for zero in b_zeros:
        if abs(complex(value(zero))) > zero_tolerance:
            raise ContractError(f"zero {zero} of the Blaschke product is not a zero of F")
    if known_zeros is not None:
        expected = sorted((complex(z) for z in known_zeros), key=_order)
        declared = sorted((complex(z) for z in b_zeros), key=_order)
        if len(expected) != len(declared) or not np.allclose(expected, declared, atol=1e-9):
            raise ContractError("Blaschke zeros do not match the zeros of F")

    probes = np.asarray(probes, dtype=complex).reshape(-1)
    f_values = value(probes)
    b_values = np.asarray(blaschke_eval(B, probes), dtype=complex)
    quotient = f_values / b_values
    gap = float(np.max(np.abs(np.abs(f_values) - np.abs(quotient)))) if probes.size else 0.0

    limits = []
    spread = 0.0
    angles = np.exp(2j * np.pi * np.arange(4) / 4)
    for zero in sorted(set(b_zeros), key=_order):
        around = zero + radius * angles
        samples = value(around) / np.asarray(blaschke_eval(B, around), dtype=complex)
        centre = complex(np.mean(samples))
        limits.append((complex(zero), centre))
        scale = max(abs(centre), 1e-300)
        spread = max(spread, float(np.max(np.abs(samples - centre))) / scale)
    return FactorizationReport(
        probes=probes,
        modulus_gap=gap,
        quotient_limits=limits,
        quotient_spread=spread,
    )
