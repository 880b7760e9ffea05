"""
The registered checks.

Every check builds its inputs from the fixed seed, measures the largest
violation of the statement it exercises and reports the quadrature error
that went into the measurement.  Checks combining assertions with
different tolerances report the secondary violations rescaled to the
check's tolerance; the raw values are kept in the details.
"""

import logging

import numpy as np

from ..blaschke import BlaschkeProduct, blaschke_eval, factorization_modulus_check
from ..cauchy import (
    boundary_membership_test,
    cauchy_handle,
    cauchy_transform,
    cauchy_transform_line_many,
    cauchy_transform_many,
    decompose_into_halfplanes,
    default_probes,
    jump_decompose,
    kernel_cone_bound,
    kernel_integral,
    nontangential_limit,
    orthogonality_pairing,
)
from ..conformal import (
    conformal_kernel_bound_check,
    derivative_sign_report,
    phi_minus,
    phi_plus,
    psi_minus,
    psi_plus,
    schwarz_christoffel_quadrature,
    transform_T,
    transform_T_inv,
    transformed_norm_estimate,
)
from ..exceptions import ContractError
from ..functions import ExpW, Pole
from ..geometry import (
    ContourSpec,
    Domain,
    LineSpec,
    Region,
    Side,
    StripGeometry,
    classify,
    contour_point,
    kernel_radius,
)
from ..hardy import (
    GridSpec,
    boundary_norm_inequality,
    constants,
    exhaustion_bound,
    halfplane_norm_estimate,
    halfplane_pole_norm,
    hp_norm_estimate,
    laplace_bound_ratio,
    pointwise_bound_check,
    power_relation,
    resolvent_bound,
    test_corpus,
    vertical_decay_profile,
    vertical_line_bound,
)
from ..quadrature import (
    QuadratureSpec,
    contour_rule,
    line_rule,
    lp_norm_on_contour,
    lp_norm_on_line,
    rule_lp_norm,
)
from .registry import CORE, DEFAULT_P_VALUES, EXTENDED, CheckOutcome, register

logger = logging.getLogger(__name__)

CONFORMAL = "conformal"

_NORMALS = {1: 1.0 + 0j, 2: 1j, 3: -1.0 + 0j}


def _setup(params: dict):
    geometry = StripGeometry(params["sigma"])
    q = QuadratureSpec(rel_tol=params["rel_tol"], abs_tol=params["abs_tol"])
    rng = np.random.default_rng(params["seed"])
    return geometry, q, rng


def _members(geometry: StripGeometry, side: Side, family: str = "rational"):
    return [f for f in test_corpus(geometry) if f.side is side and f.family == family]


def _pole(w0, geometry: StripGeometry, order: int = 1) -> Pole:
    return Pole(complex(w0) * geometry.sigma, order)


def _rescaled(value: float, own_tolerance: float, tolerance: float) -> float:
    """A violation measured against own_tolerance, in units of tolerance."""
    if own_tolerance <= 0:
        return value
    return value * tolerance / own_tolerance


def _vertex(leg: int, rng, sigma: float) -> complex:
    """A point of Gamma on the given leg, away from the corners."""
    if leg == 1:
        return complex(-sigma, rng.uniform(0.3, 4.0) * sigma)
    if leg == 2:
        return complex(rng.uniform(-0.7, 0.7) * sigma, 0.0)
    return complex(sigma, rng.uniform(0.3, 4.0) * sigma)


def _boundary_points(geometry: StripGeometry, rng, count: int, reach: float) -> np.ndarray:
    """Points of Gamma with arc length |b| <= sigma + reach, corners excluded."""
    sigma = geometry.sigma
    b = rng.uniform(-sigma - reach, sigma + reach, size=4 * count)
    b = b[np.abs(np.abs(b) - sigma) > 1e-3 * sigma][:count]
    return np.asarray(contour_point(b, geometry.boundary), dtype=complex)


def _interior_points(domain: Domain, geometry: StripGeometry, rng, count: int) -> np.ndarray:
    """Points of an open domain kept 0.05 sigma away from its boundary."""
    sigma = geometry.sigma
    margin = 0.05 * sigma
    if domain is Domain.UPPER:
        return rng.uniform(-4, 4, count) * sigma + 1j * rng.uniform(margin, 4 * sigma, count)
    if domain is Domain.LOWER:
        return rng.uniform(-4, 4, count) * sigma - 1j * rng.uniform(margin, 4 * sigma, count)
    if domain is Domain.OMEGA_PLUS:
        u = rng.uniform(-sigma + margin, sigma - margin, count)
        return u + 1j * rng.uniform(margin, 3 * sigma, count)
    found = []
    while len(found) < count:
        w = complex(rng.uniform(-4, 4) * sigma, rng.uniform(-4, 4) * sigma)
        outside = classify(w, geometry) is Region.OMEGA_MINUS
        if outside and geometry.distance_to_boundary(w) >= margin:
            found.append(w)
    return np.array(found, dtype=complex)


# Kernel


@register(
    "CHK-K1",
    "kernel normalization",
    defaults={"tolerance": 1e-8, "pairs": 50},
)
def kernel_normalization(params: dict) -> CheckOutcome:
    geometry, q, rng = _setup(params)
    errors, estimates, converged = [], [], True
    for k in range(params["pairs"]):
        leg = k % 3 + 1
        zeta0 = _vertex(leg, rng, geometry.sigma)
        radius = kernel_radius(zeta0, geometry) * rng.uniform(0.1, 0.9)
        z = radius * _NORMALS[leg] * np.exp(1j * rng.uniform(-0.6, 0.6))
        value, result = kernel_integral(z, zeta0, geometry, q, full_output=True)
        errors.append(abs(value - 1.0))
        estimates.append(result.error_estimate)
        converged = converged and result.accurate
    return CheckOutcome(
        max_violation=max(errors),
        error_estimate=max(estimates),
        converged=converged,
        samples=len(errors),
        details={"errors": errors},
    )


@register(
    "CHK-K2",
    "kernel cone bound",
    defaults={"tolerance": 1e-12, "samples": 1000, "apertures": (0.5, 1.0, 2.0)},
)
def kernel_cone_estimate(params: dict) -> CheckOutcome:
    geometry, _q, rng = _setup(params)
    sigma = geometry.sigma
    apertures = params["apertures"]
    worst = 0.0
    ratios = []
    for k in range(params["samples"]):
        leg = int(rng.integers(1, 4))
        alpha = apertures[k % len(apertures)]
        zeta0 = _vertex(leg, rng, sigma)
        radius = kernel_radius(zeta0, geometry) * rng.uniform(0.01, 0.99)
        angle = rng.uniform(-1.0, 1.0) * 0.999 * np.arctan(alpha)
        z = radius * _NORMALS[leg] * np.exp(1j * angle)
        zeta = contour_point(rng.uniform(-12.0, 12.0) * sigma, geometry.boundary)
        modulus, bound = kernel_cone_bound(z, zeta, zeta0, alpha)
        ratio = float(modulus / bound)
        ratios.append(ratio)
        worst = max(worst, ratio - 1.0)
    return CheckOutcome(
        max_violation=worst,
        samples=len(ratios),
        details={"max_ratio": max(ratios)},
    )


# Cauchy representation


def _representation(params: dict, side: Side) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    count = params["probes"]
    plus = default_probes(geometry, Region.OMEGA_PLUS, count, params["seed"])
    minus = default_probes(geometry, Region.OMEGA_MINUS, count, params["seed"] + 1)
    probes = np.concatenate([plus, minus])
    inside_plus = np.arange(probes.size) < plus.size
    worst, error, converged = 0.0, 0.0, True
    for member in _members(geometry, side):
        values, result = cauchy_transform(member.boundary(geometry), probes, q, full_output=True)
        exact = np.asarray(member.expr(probes), dtype=complex)
        if side is Side.PLUS:
            expected = np.where(inside_plus, exact, 0.0)
        else:
            expected = np.where(inside_plus, 0.0, -exact)
        worst = max(worst, float(np.max(np.abs(values - expected))))
        error = max(error, result.error_estimate)
        converged = converged and result.accurate
    return CheckOutcome(
        max_violation=worst,
        error_estimate=error,
        converged=converged,
        samples=probes.size * len(_members(geometry, side)),
    )


@register("CHK-C1", "Cauchy representation, plus side", defaults={"tolerance": 1e-7, "probes": 20})
def representation_plus(params: dict) -> CheckOutcome:
    return _representation(params, Side.PLUS)


@register("CHK-C2", "Cauchy representation, minus side", defaults={"tolerance": 1e-7, "probes": 20})
def representation_minus(params: dict) -> CheckOutcome:
    return _representation(params, Side.MINUS)


def _mixed_data(geometry: StripGeometry, count: int) -> list:
    """Sums of one plus-side and one minus-side corpus pole, distinct up to 10 data."""
    plus = _members(geometry, Side.PLUS)
    minus = _members(geometry, Side.MINUS)
    return [
        plus[k % len(plus)].expr + minus[(k + k // len(plus)) % len(minus)].expr
        for k in range(count)
    ]


@register(
    "CHK-C3",
    "Cauchy transform bound on the half-strips",
    defaults={"tolerance": 1e-4, "p_values": DEFAULT_P_VALUES, "depth": 3, "data": 10},
)
def strip_transform_bound(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    grid = GridSpec(depth=params["depth"])
    worst, error, converged, samples = 0.0, 0.0, True, 0
    ratios = {}
    for expr in _mixed_data(geometry, params["data"]):
        F = expr.boundary(geometry)
        for side in (Side.PLUS, Side.MINUS):
            measured = []
            for c in grid.chain(side, geometry.sigma):
                rule = contour_rule(c, order=8, grading=4, reach=2.0**8, width=0.5)
                batch = cauchy_transform_many(F, rule.nodes, q)
                measured.append((rule, batch))
                error = max(error, batch.error_estimate)
                converged = converged and batch.accurate
                samples += rule.size
            for p in params["p_values"]:
                bounds = constants(p)
                bound = (
                    bounds.plus_transform_bound
                    if side is Side.PLUS
                    else bounds.minus_transform_bound
                )
                boundary_norm = lp_norm_on_contour(F, p, geometry.boundary, q)
                estimate = max(rule_lp_norm(batch.values, rule, p) for rule, batch in measured)
                ratio = estimate / boundary_norm
                ratios[f"{expr}|{side.value}|{p:g}"] = ratio
                worst = max(worst, ratio - bound)
    return CheckOutcome(
        max_violation=max(worst, 0.0),
        error_estimate=error,
        converged=converged,
        samples=samples,
        details={"ratios": ratios},
    )


@register(
    "CHK-C4",
    "Cauchy transform bound on the real line",
    defaults={"tolerance": 1e-4, "p_values": DEFAULT_P_VALUES, "heights": (0.5, 0.125)},
)
def line_transform_bound(params: dict) -> CheckOutcome:
    _geometry, q, _rng = _setup(params)
    f = Pole(-1j) + 0.5 * Pole(2j)
    decay = f.decay()
    real_line = LineSpec(0j, 1.0 + 0j, "R")
    measured = []
    error, converged = 0.0, True
    for y in params["heights"]:
        shifted = LineSpec(1j * y, 1.0 + 0j, f"Im={y:g}")
        rule = line_rule(shifted, order=8, grading=4, reach=2.0**8, width=0.5)
        batch = cauchy_transform_line_many(f, rule.nodes, q, decay=decay)
        measured.append((rule, batch))
        error = max(error, batch.error_estimate)
        converged = converged and batch.accurate
    worst = 0.0
    ratios = {}
    for p in params["p_values"]:
        f_norm = lp_norm_on_line(f, p, real_line, q, decay=decay)
        ratio = max(rule_lp_norm(batch.values, rule, p) for rule, batch in measured) / f_norm
        ratios[f"{p:g}"] = ratio
        worst = max(worst, ratio - constants(p).A_p)
    return CheckOutcome(
        max_violation=max(worst, 0.0),
        error_estimate=error,
        converged=converged,
        samples=sum(rule.size for rule, _batch in measured),
        details={"ratios": ratios},
    )


# Jump, orthogonality, boundary characterization


@register(
    "CHK-J1",
    "jump decomposition",
    defaults={"tolerance": 1e-4, "functions": 10, "points": 2, "levels": 12, "aperture": 1.0},
)
def jump_decomposition(params: dict) -> CheckOutcome:
    geometry, q, rng = _setup(params)
    plus = _members(geometry, Side.PLUS)
    minus = _members(geometry, Side.MINUS)
    worst, converged, samples = 0.0, True, 0
    for k in range(params["functions"]):
        expr = plus[k % len(plus)].expr + minus[k % len(minus)].expr
        F_plus, F_minus = jump_decompose(expr.boundary(geometry), q)
        for _ in range(params["points"]):
            zeta0 = _vertex(int(rng.integers(1, 4)), rng, geometry.sigma)
            inner = nontangential_limit(
                F_plus, zeta0, params["aperture"], side=Side.PLUS, levels=params["levels"]
            )
            outer = nontangential_limit(
                F_minus, zeta0, params["aperture"], side=Side.MINUS, levels=params["levels"]
            )
            gap = abs(inner.limit + outer.limit - complex(expr(zeta0)))
            worst = max(worst, gap)
            converged = converged and inner.converged and outer.converged
            samples += 1
    return CheckOutcome(max_violation=worst, converged=converged, samples=samples)


@register("CHK-O1", "orthogonality of the plus side", defaults={"tolerance": 1e-8})
def orthogonality(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    members = [member.boundary(geometry) for member in _members(geometry, Side.PLUS)]
    pairs = [(members[0], members[0])]
    pairs += [(F, members[(i + 1) % len(members)]) for i, F in enumerate(members)]
    worst, error, converged = 0.0, 0.0, True
    for F, G in pairs:
        value, result = orthogonality_pairing(F, G, None, q, full_output=True)
        worst = max(worst, abs(value))
        error = max(error, result.error_estimate)
        converged = converged and result.accurate

    sigma = geometry.sigma
    F = _pole(2.0, geometry).boundary(geometry)
    G = _pole(0.5j, geometry).boundary(geometry)
    cross, result = orthogonality_pairing(F, G, None, q, full_output=True)
    oracle = 2j * np.pi / (0.5j * sigma - 2.0 * sigma)
    cross_error = abs(cross - oracle)
    return CheckOutcome(
        max_violation=max(worst, cross_error),
        error_estimate=max(error, result.error_estimate),
        converged=converged and result.accurate,
        samples=len(pairs) + 1,
        details={"cross_pair": cross, "cross_oracle": oracle},
    )


@register(
    "CHK-B1",
    "boundary characterization by moments",
    defaults={"tolerance": 1e-7, "probes": 20},
)
def boundary_characterization(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    count = params["probes"]
    in_minus = default_probes(geometry, Region.OMEGA_MINUS, count, params["seed"])
    in_plus = default_probes(geometry, Region.OMEGA_PLUS, count, params["seed"] + 1)
    worst, error, samples = 0.0, 0.0, 0
    plus = _members(geometry, Side.PLUS) + _members(geometry, Side.PLUS, "exponential")
    for member in plus:
        report = boundary_membership_test(member.boundary(geometry), Side.PLUS, in_minus, q)
        worst = max(worst, report.max_abs)
        error = max(error, report.error_estimate)
        samples += report.probes.size
    for member in _members(geometry, Side.MINUS):
        F = member.boundary(geometry)
        report = boundary_membership_test(F, Side.MINUS, in_plus, q)
        worst = max(worst, report.max_abs)
        # the moments of a minus trace at points of Omega- reproduce -F there
        values, result = cauchy_transform(F, in_minus, q, full_output=True)
        exact = np.asarray(member.expr(in_minus), dtype=complex)
        worst = max(worst, float(np.max(np.abs(values + exact))))
        error = max(error, report.error_estimate, result.error_estimate)
        samples += report.probes.size + in_minus.size
    return CheckOutcome(max_violation=worst, error_estimate=error, samples=samples)


# Norms


def _pointwise_samples(side: Side, geometry: StripGeometry, rng, count: int) -> np.ndarray:
    sigma = geometry.sigma
    if side is Side.PLUS:
        u = rng.uniform(-0.95, 0.95, count) * sigma
        v = 10.0 ** rng.uniform(-2.0, 0.6, count) * sigma
        return u + 1j * v
    half = count // 2
    below = rng.uniform(-4.0, 4.0, half) * sigma - 1j * 10.0 ** rng.uniform(-2.0, 0.6, half) * sigma
    right = (1.0 + 10.0 ** rng.uniform(-2.0, 0.6, count - half)) * sigma
    heights = rng.uniform(0.0, 4.0, count - half) * sigma
    beside = right * rng.choice([-1.0, 1.0], count - half) + 1j * heights
    return np.concatenate([below, beside])


@register(
    "CHK-N1",
    "pointwise bounds",
    defaults={"tolerance": 1e-9, "p_values": DEFAULT_P_VALUES, "depth": 10, "samples": 20},
)
def pointwise_bounds(params: dict) -> CheckOutcome:
    geometry, q, rng = _setup(params)
    functions = [
        (_pole(2.0, geometry), Side.PLUS),
        (_pole(-0.5j, geometry), Side.PLUS),
        (ExpW(1.0), Side.PLUS),
        (_pole(0.5j, geometry), Side.MINUS),
        (_pole(2j, geometry), Side.MINUS),
    ]
    grid = GridSpec(depth=params["depth"])
    worst, violations, samples = 0.0, 0, 0
    for expr, side in functions:
        F = expr.analytic(Domain.for_side(side), geometry)
        points = _pointwise_samples(side, geometry, rng, params["samples"])
        for p in params["p_values"]:
            report = pointwise_bound_check(F, p, side, points, grid=grid, q=q)
            worst = max(worst, report.max_violation)
            violations += report.violations
            samples += points.size
    return CheckOutcome(max_violation=worst, samples=samples, details={"violations": violations})


@register(
    "CHK-N2",
    "vertical decay of contour norms",
    defaults={"tolerance": 1e-8, "p_values": DEFAULT_P_VALUES, "top": 14},
)
def vertical_decay(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    s = geometry.sigma / 2.0
    heights = 2.0 ** np.arange(0, params["top"] + 1)
    functions = [
        _pole(2.0, geometry),
        _pole(-0.5j, geometry),
        _pole(3 + 1j, geometry),
        _pole(2.0, geometry, 2),
    ]
    worst, samples = 0.0, 0
    for expr in functions:
        F = expr.analytic(Domain.OMEGA_PLUS, geometry)
        for p in params["p_values"]:
            profile = np.asarray(vertical_decay_profile(F, p, s, heights, q))
            growth = np.diff(profile) / np.maximum(profile[:-1], 1e-300)
            worst = max(worst, float(np.max(growth)), profile[-1] / profile[0] - 0.5)
            samples += profile.size
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples)


@register(
    "CHK-N3",
    "restriction of the minus side to the lower half-plane",
    defaults={"tolerance": 1e-6, "p_values": DEFAULT_P_VALUES, "depth": 12},
)
def minus_restriction(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    depth = params["depth"]
    offsets = 2.0 ** -np.arange(1, depth + 1)
    grid = GridSpec(depth=depth)
    worst, samples = 0.0, 0
    for expr in (_pole(0.5j, geometry), _pole(0.3 + 1.2j, geometry), _pole(2j, geometry)):
        F = expr.analytic(Domain.OMEGA_MINUS, geometry)
        for p in params["p_values"]:
            line_sup = halfplane_norm_estimate(F, p, Domain.LOWER, offsets, q)
            estimate = hp_norm_estimate(F, p, Side.MINUS, grid, q)
            worst = max(worst, line_sup / estimate.value - 1.0)
            samples += offsets.size + len(estimate.grid)
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples)


@register(
    "CHK-N4",
    "half-plane sums and the decomposition of the plus side",
    defaults={
        "tolerance": 1e-7,
        "p_values": DEFAULT_P_VALUES,
        "depth": 10,
        "distance": 1.0,
        "probes": 10,
    },
)
def halfplane_sums(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    sigma, d = geometry.sigma, params["distance"]
    pieces = [
        Pole(complex(-sigma - d, 0.5 * sigma)),
        Pole(complex(0.0, -d)),
        Pole(complex(sigma + d, 0.5 * sigma)),
    ]
    total = pieces[0] + pieces[1] + pieces[2]
    F = total.analytic(Domain.OMEGA_PLUS, geometry)
    grid = GridSpec(depth=params["depth"])
    excess = 0.0
    for p in params["p_values"]:
        bound = constants(p).five_halves_pow * 3.0 * halfplane_pole_norm(d, p)
        excess = max(excess, hp_norm_estimate(F, p, Side.PLUS, grid, q).value - bound)

    expr = _pole(2.0, geometry) + _pole(-1.2 - 0.3j, geometry)
    parts = decompose_into_halfplanes(expr.boundary(geometry), q)
    probes = default_probes(geometry, Region.OMEGA_PLUS, params["probes"], params["seed"])
    recombined = sum(np.asarray(part(probes), dtype=complex) for part in parts)
    gap = float(np.max(np.abs(recombined - np.asarray(expr(probes), dtype=complex))))
    return CheckOutcome(
        max_violation=max(excess, 0.0, gap),
        samples=len(params["p_values"]) + probes.size,
        details={"decomposition_gap": gap},
    )


def _laplace_family():
    def indicator(a, b):
        return lambda t: 1.0 if a <= t < b else 0.0

    family = [
        ("exp(-t)", lambda t: np.exp(-t), ()),
        ("1[0,1)", indicator(0.0, 1.0), (1.0,)),
        ("1[0,2)", indicator(0.0, 2.0), (2.0,)),
        ("1[1,3)", indicator(1.0, 3.0), (1.0, 3.0)),
        ("t 1[0,1)", lambda t: t if t < 1.0 else 0.0, (1.0,)),
        ("(1+t)^-1", lambda t: 1.0 / (1.0 + t), ()),
        ("(1+t)^-2", lambda t: (1.0 + t) ** -2, ()),
        ("(1+t)^-0.75", lambda t: (1.0 + t) ** -0.75, ()),
        ("1/(1+t^2)", lambda t: 1.0 / (1.0 + t * t), ()),
        ("exp(-t^2)", lambda t: np.exp(-t * t), ()),
        ("exp(-t) cos t", lambda t: np.exp(-t) * np.cos(t), ()),
        ("exp(-t) sin t", lambda t: np.exp(-t) * np.sin(t), ()),
        ("t exp(-2t)", lambda t: t * np.exp(-2.0 * t), ()),
        ("exp(-t) e^(it)", lambda t: np.exp((-1.0 + 1j) * t), ()),
    ]
    for a in (0.5, 2.0, 4.0):
        family.append((f"exp(-{a:g}t)", lambda t, a=a: np.exp(-a * t), ()))
    for k in (1, 2, 3):
        family.append((f"t^{k} exp(-t)", lambda t, k=k: t**k * np.exp(-t), ()))
    return family


@register("CHK-L1", "Laplace transform bound", defaults={"tolerance": 1e-6})
def laplace_bound(params: dict) -> CheckOutcome:
    ratios = {name: laplace_bound_ratio(f, breaks) for name, f, breaks in _laplace_family()}
    excess = max(ratio - np.sqrt(np.pi) for ratio in ratios.values())
    exact_gap = abs(ratios["exp(-t)"] - np.sqrt(2.0))
    return CheckOutcome(
        max_violation=max(excess, exact_gap, 0.0),
        samples=len(ratios),
        details={"ratios": ratios},
    )


# Conformal maps


def _quadrature_sample(rng, count: int) -> np.ndarray:
    """count points of the upper half-plane with 0.1 <= Im z < 10**0.5."""
    return rng.uniform(-3.0, 3.0, count) + 1j * 10.0 ** rng.uniform(-1.0, 0.5, count)


@register(
    "CHK-M1",
    "conformal round trips and boundary correspondence",
    tags=(CORE, CONFORMAL),
    defaults={"tolerance": 1e-10, "points": 100, "quadrature_tolerance": 1e-9},
)
def conformal_round_trip(params: dict) -> CheckOutcome:
    geometry, _q, rng = _setup(params)
    sigma, count = geometry.sigma, params["points"]
    z = rng.uniform(-3.0, 3.0, count) + 1j * 10.0 ** rng.uniform(-3.0, 0.5, count)
    round_plus = np.abs(psi_plus(phi_plus(z, sigma), sigma) - z)
    round_minus = np.abs(psi_minus(phi_minus(np.conj(z), sigma), sigma) - np.conj(z))
    round_trip = float(max(np.max(round_plus), np.max(round_minus)))

    quadrature_points = _quadrature_sample(rng, count)
    quadrature_gap = 0.0
    for point in quadrature_points:
        direct = schwarz_christoffel_quadrature(point, Side.PLUS, sigma)
        quadrature_gap = max(quadrature_gap, abs(direct - complex(phi_plus(point, sigma))))
        lower = np.conj(point)
        direct = schwarz_christoffel_quadrature(lower, Side.MINUS, sigma)
        quadrature_gap = max(quadrature_gap, abs(direct - complex(phi_minus(lower, sigma))))

    misplaced = 0
    for x in np.linspace(-3.0, 3.0, 61):
        if abs(abs(x) - 1.0) < 1e-9:
            continue
        expected = 2 if abs(x) < 1 else (3 if x > 0 else 1)
        for image in (phi_plus(x, sigma), phi_minus(x, sigma)):
            region = classify(complex(image), geometry)
            if not region.is_boundary or region.leg != expected:
                misplaced += 1

    tolerance = params["tolerance"]
    return CheckOutcome(
        max_violation=max(
            round_trip,
            _rescaled(quadrature_gap, params["quadrature_tolerance"], tolerance),
            float(misplaced),
        ),
        samples=2 * count + quadrature_points.size + 122,
        details={
            "round_trip": round_trip,
            "quadrature_gap": quadrature_gap,
            "misplaced": misplaced,
            "quadrature_points": int(quadrature_points.size),
        },
    )


@register(
    "CHK-M2",
    "derivative signs of the conformal maps",
    tags=(CORE, CONFORMAL),
    defaults={"tolerance": 0.0, "samples": 1000},
)
def derivative_signs(params: dict) -> CheckOutcome:
    geometry, _q, rng = _setup(params)
    count = params["samples"]
    off_axis = 2 * count // 5
    on_axis = (count - 2 * off_axis) // 2
    upper = rng.uniform(-5.0, 5.0, off_axis) + 1j * 10.0 ** rng.uniform(-3.0, 1.0, off_axis)
    axis = 1j * 10.0 ** rng.uniform(-3.0, 1.0, on_axis)
    samples = np.concatenate([upper, np.conj(upper), axis, -axis])
    report = derivative_sign_report(samples, geometry.sigma)
    return CheckOutcome(
        max_violation=float(len(report.violations)),
        samples=report.checked,
        details={"max_axis_imag": report.max_axis_imag},
    )


@register(
    "CHK-M3",
    "conformal kernel bound",
    tags=(CORE, CONFORMAL),
    defaults={
        "tolerance": 1e-6,
        "eps_values": (1.0, 2.0),
        "q_values": (1.5, 2.0, 3.0),
        "heights": (0.5, 0.1),
    },
)
def conformal_kernel_bound(params: dict) -> CheckOutcome:
    geometry, _q, _rng = _setup(params)
    sigma = geometry.sigma
    alphas = (3.0 * sigma, 0.5j * sigma, complex(-2.0 * sigma, 0.5))
    worst, samples = 0.0, 0
    ratios = {}
    for side in (Side.PLUS, Side.MINUS):
        heights = [side.sign * y for y in params["heights"]]
        for alpha in alphas:
            for eps in params["eps_values"]:
                for q_exp in params["q_values"]:
                    report = conformal_kernel_bound_check(
                        alpha, eps, q_exp, heights, sigma=sigma, side=side
                    )
                    ratios[f"{side.value}|{alpha}|{eps:g}|{q_exp:g}"] = report.max_ratio
                    worst = max(worst, report.max_ratio - 1.0)
                    samples += len(heights)
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples, details={"ratios": ratios})


@register(
    "CHK-T1",
    "norm bracket of the transplant operators",
    tags=(CORE, CONFORMAL),
    defaults={"tolerance": 1e-9, "p_values": (1.0, 2.0), "depth": 12, "points": 50},
)
def isomorphism_bracket(params: dict) -> CheckOutcome:
    geometry, q, rng = _setup(params)
    functions = [
        (_pole(2.0, geometry), Side.PLUS),
        (_pole(-0.5j, geometry), Side.PLUS),
        (_pole(3 + 1j, geometry), Side.PLUS),
        (ExpW(1.0), Side.PLUS),
        (ExpW(0.5), Side.PLUS),
        (_pole(0.5j, geometry), Side.MINUS),
        (_pole(2j, geometry), Side.MINUS),
    ]
    grid = GridSpec(depth=params["depth"])
    worst, samples = 0.0, 0
    ratios = {}
    round_trip = 0.0
    for expr, side in functions:
        F = expr.analytic(Domain.for_side(side), geometry)
        base = 5.0 if side is Side.PLUS else 6.0
        for p in params["p_values"]:
            if expr.p_min() >= p:
                continue
            transformed = transformed_norm_estimate(F, p, side=side, q=q)
            ratio = transformed / hp_norm_estimate(F, p, side, grid, q).value
            ratios[f"{expr}|{side.value}|{p:g}"] = ratio
            lower, upper = base ** (-1.0 / p) - 0.05, 1.01
            worst = max(worst, lower - ratio, ratio - upper)
            samples += 1
        points = _interior_points(Domain.for_side(side), geometry, rng, params["points"])
        back = transform_T_inv(transform_T(F, 2.0, side), 2.0, side)
        gap = np.abs(np.asarray(back(points), dtype=complex) - np.asarray(expr(points)))
        round_trip = max(round_trip, float(np.max(gap)))
        samples += points.size
    return CheckOutcome(
        max_violation=max(worst, 0.0, round_trip),
        samples=samples,
        details={"ratios": ratios, "round_trip": round_trip},
    )


# Blaschke products


_BLASCHKE_DOMAINS = (Domain.UPPER, Domain.LOWER, Domain.OMEGA_PLUS, Domain.OMEGA_MINUS)


def _boundary_of(domain: Domain, geometry: StripGeometry, rng, count: int) -> np.ndarray:
    if domain in (Domain.UPPER, Domain.LOWER):
        return rng.uniform(-6.0, 6.0, count) * geometry.sigma + 0j
    # far up the rays Psi+ grows like cosh, so the plus probes stay low
    reach = 2.0 * geometry.sigma if domain is Domain.OMEGA_PLUS else 6.0 * geometry.sigma
    return _boundary_points(geometry, rng, count, reach)


@register(
    "CHK-BL1",
    "Blaschke products are inner",
    defaults={"tolerance": 1e-10, "interior": 1000, "boundary": 1000, "zeros": 8},
)
def blaschke_modulus(params: dict) -> CheckOutcome:
    geometry, _q, rng = _setup(params)
    products = []
    for domain in _BLASCHKE_DOMAINS:
        many = _interior_points(domain, geometry, rng, params["zeros"])
        few = _interior_points(domain, geometry, rng, 3)
        products.append(BlaschkeProduct(many, 0, domain, geometry))
        products.append(BlaschkeProduct(few, 1, domain, geometry))
    inside_count = max(1, params["interior"] // len(products))
    edge_count = max(1, params["boundary"] // len(products))
    edge_gap, interior_excess, not_inside, samples = 0.0, 0.0, 0, 0
    for B in products:
        inside = np.abs(blaschke_eval(B, _interior_points(B.domain, geometry, rng, inside_count)))
        edge = np.abs(blaschke_eval(B, _boundary_of(B.domain, geometry, rng, edge_count)))
        edge_gap = max(edge_gap, float(np.max(np.abs(edge - 1.0))))
        interior_excess = max(interior_excess, float(np.max(inside)) - 1.0)
        not_inside += int(np.sum(inside >= 1.0))
        samples += inside.size + edge.size
    return CheckOutcome(
        max_violation=max(edge_gap, interior_excess, float(not_inside)),
        samples=samples,
        details={"boundary_gap": edge_gap, "interior_not_below_one": not_inside},
    )


def _factorization_examples(geometry: StripGeometry):
    sigma = geometry.sigma
    a_upper = 0.5 + 1.0j
    a_lower = -0.3 - 0.7j
    w_plus = complex(0.2 * sigma, 0.8 * sigma)
    w_minus = complex(2.0 * sigma, -0.5 * sigma)
    z_plus = complex(psi_plus(w_plus, sigma))
    z_minus = complex(psi_minus(w_minus, sigma))

    def upper(z):
        z = np.asarray(z, dtype=complex)
        return (z - a_upper) / (z + 1j) ** 2

    def upper_double(z):
        z = np.asarray(z, dtype=complex)
        return (z - a_upper) ** 2 / (z + 1j) ** 3

    def lower(z):
        z = np.asarray(z, dtype=complex)
        return (z - a_lower) / (z - 1j) ** 2

    def strip_plus(w):
        z = np.asarray(psi_plus(w, sigma), dtype=complex)
        return (z - z_plus) / (z + 1j) ** 2

    def strip_minus(w):
        z = np.asarray(psi_minus(w, sigma), dtype=complex)
        return (z - z_minus) / (z - 1j) ** 2

    return [
        (upper, [a_upper], Domain.UPPER),
        (upper_double, [a_upper, a_upper], Domain.UPPER),
        (lower, [a_lower], Domain.LOWER),
        (strip_plus, [w_plus], Domain.OMEGA_PLUS),
        (strip_minus, [w_minus], Domain.OMEGA_MINUS),
    ]


@register(
    "CHK-BL2",
    "Blaschke factorization preserves the boundary modulus",
    defaults={"tolerance": 1e-10, "probes": 50},
)
def blaschke_factorization(params: dict) -> CheckOutcome:
    geometry, _q, rng = _setup(params)
    gap, not_removable, accepted_wrong, samples = 0.0, 0, 0, 0
    for F, zeros, domain in _factorization_examples(geometry):
        B = BlaschkeProduct(zeros, 0, domain, geometry)
        probes = _boundary_of(domain, geometry, rng, params["probes"])
        report = factorization_modulus_check(F, B, probes, known_zeros=zeros)
        gap = max(gap, report.modulus_gap)
        not_removable += 0 if report.removable else 1
        samples += probes.size
        shift = 0.1j * geometry.sigma * (1 if domain in (Domain.UPPER, Domain.OMEGA_PLUS) else -1)
        wrong = BlaschkeProduct([zeros[0] + shift], 0, domain, geometry)
        try:
            factorization_modulus_check(F, wrong, probes)
        except ContractError:
            pass
        else:
            accepted_wrong += 1
    return CheckOutcome(
        max_violation=max(gap, float(not_removable), float(accepted_wrong)),
        samples=samples,
        details={
            "modulus_gap": gap,
            "not_removable": not_removable,
            "accepted_wrong": accepted_wrong,
        },
    )


@register(
    "CHK-NT1",
    "non-tangential convergence of Cauchy transforms",
    defaults={"tolerance": 1e-5, "triples": 10, "levels": 12},
)
def nontangential_convergence(params: dict) -> CheckOutcome:
    geometry, q, rng = _setup(params)
    plus = _members(geometry, Side.PLUS)
    minus = _members(geometry, Side.MINUS)
    apertures = (0.5, 1.0, 2.0)
    worst, non_monotone, converged = 0.0, 0, True
    for k in range(params["triples"]):
        side = Side.MINUS if k % 4 == 3 else Side.PLUS
        member = minus[k % len(minus)] if side is Side.MINUS else plus[k % len(plus)]
        sign = -1 if side is Side.MINUS else 1
        G = cauchy_handle(member.boundary(geometry), side, q, sign)
        zeta0 = _vertex(k % 3 + 1, rng, geometry.sigma)
        result = nontangential_limit(
            G, zeta0, apertures[k % len(apertures)], side=side, levels=params["levels"]
        )
        exact = complex(member.expr(zeta0))
        worst = max(worst, abs(result.limit - exact))
        raw = np.array([abs(value - exact) for _r, value in result.table])
        if np.any(np.diff(raw[-5:]) >= 0):
            logger.debug(f"approach to {zeta0} for {member.name} is not monotone: {raw[-5:]}")
            non_monotone += 1
        converged = converged and result.converged
    return CheckOutcome(
        max_violation=max(worst, float(non_monotone)),
        converged=converged,
        samples=params["triples"] * params["levels"],
        details={"non_monotone": non_monotone},
    )


# Extended checks


@register(
    "CHK-N5",
    "resolvent bound on a contour",
    tags=(EXTENDED,),
    defaults={"tolerance": 1e-9, "p_values": DEFAULT_P_VALUES, "points": 4},
)
def resolvent(params: dict) -> CheckOutcome:
    geometry, q, rng = _setup(params)
    sigma = geometry.sigma
    contours = [
        ContourSpec(sigma, 0.0),
        ContourSpec(0.5 * sigma, 0.25 * sigma),
        ContourSpec(2.0 * sigma, -sigma),
    ]
    worst, samples = 0.0, 0
    for c in contours:
        for _ in range(params["points"]):
            w0 = complex(rng.uniform(-0.9, 0.9) * c.s, c.t + rng.uniform(0.05, 3.0) * sigma)
            for p in params["p_values"]:
                integral, bound = resolvent_bound(w0, p, c, q)
                worst = max(worst, (integral - bound) / bound)
                samples += 1
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples)


@register(
    "CHK-N6",
    "boundary norm below the Hardy norm",
    tags=(EXTENDED,),
    defaults={"tolerance": 1e-3, "p_values": DEFAULT_P_VALUES, "depth": 12},
)
def boundary_norm(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    grid = GridSpec(depth=params["depth"])
    worst, samples = 0.0, 0
    for expr in (_pole(2.0, geometry), _pole(-0.5j, geometry), ExpW(1.0)):
        F = expr.analytic(Domain.OMEGA_PLUS, geometry)
        for p in params["p_values"]:
            boundary, estimate = boundary_norm_inequality(F, p, Side.PLUS, grid, q)
            worst = max(worst, boundary / estimate - 1.0)
            samples += 1
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples)


@register(
    "CHK-V1",
    "vertical lines of the upper half-plane",
    tags=(EXTENDED,),
    defaults={"tolerance": 1e-9, "p_values": DEFAULT_P_VALUES, "distance": 1.0},
)
def vertical_lines(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    d = params["distance"]
    f = Pole(complex(0.0, -d)).analytic(Domain.UPPER, geometry)
    worst, samples = 0.0, 0
    for p in params["p_values"]:
        norm = halfplane_pole_norm(d, p)
        for x in (-2.0 * geometry.sigma, 0.0, 1.5 * geometry.sigma):
            lhs, rhs = vertical_line_bound(f, p, x, norm, q)
            worst = max(worst, (lhs - rhs) / rhs)
            samples += 1
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples)


@register(
    "CHK-E1",
    "exhaustion curves",
    tags=(EXTENDED,),
    defaults={"tolerance": 1e-6, "p_values": DEFAULT_P_VALUES, "depth": 12},
)
def exhaustion(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    grid = GridSpec(depth=params["depth"])
    worst, samples = 0.0, 0
    members = [
        member
        for member in test_corpus(geometry)
        if member.side is Side.PLUS and member.family in ("rational", "exponential")
    ]
    members = members[:3] + [member for member in members if member.family == "exponential"][:2]
    for member in members:
        F = member.analytic(geometry)
        for p in params["p_values"]:
            if member.exact_norm is not None:
                norm = member.exact_norm(p)
            else:
                norm = hp_norm_estimate(F, p, Side.PLUS, grid, q).value
            for n in (1, 4, 16):
                lhs, rhs = exhaustion_bound(F, p, n, norm, q)
                worst = max(worst, (lhs - rhs) / rhs)
                samples += 1
    return CheckOutcome(max_violation=max(worst, 0.0), samples=samples)


@register(
    "CHK-H1",
    "powers and exponents",
    tags=(EXTENDED,),
    defaults={"tolerance": 1e-8, "p_values": (1.25, 2.0), "depth": 4},
)
def powers(params: dict) -> CheckOutcome:
    geometry, q, _rng = _setup(params)
    contours = GridSpec(depth=params["depth"]).chain(Side.PLUS, geometry.sigma)
    worst, samples = 0.0, 0
    for expr in (_pole(2.0, geometry), _pole(3 + 1j, geometry), ExpW(1.0)):
        F = expr.analytic(Domain.OMEGA_PLUS, geometry)
        for n in (2, 3):
            for p in params["p_values"]:
                for c in contours:
                    left, right = power_relation(F, n, p, c, q)
                    worst = max(worst, abs(left - right) / right)
                    samples += 1
    return CheckOutcome(max_violation=worst, samples=samples)
