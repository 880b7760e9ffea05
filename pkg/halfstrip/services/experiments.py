"""
Experiment runners behind the command-line subcommands.

Each runner takes parsed inputs and a run configuration (anything with
the RunConfig attributes) and returns a dict:
    - success: bool
    - header / rows: the plot-ready table (or reports for verification)
    - error: message when success is False
    - numerical: True when the failure was numerical rather than bad input
"""

import logging

import numpy as np

from ..cauchy import cauchy_handle, cauchy_transform, jump_decompose, nontangential_limit
from ..conformal import phi_minus, phi_plus, psi_minus, psi_plus
from ..exceptions import EvaluationError, HalfstripError, InversionError, ParameterError
from ..geometry import Domain, Region, Side, StripGeometry, classify
from ..hardy import GridSpec, hp_norm_estimate
from ..quadrature import QuadratureSpec
from ..verify import registered_checks, run_all, run_check, summarize

logger = logging.getLogger(__name__)

DECOMPOSE_HEADER = [
    "w_re",
    "w_im",
    "region",
    "plus_re",
    "plus_im",
    "minus_re",
    "minus_im",
    "f_re",
    "f_im",
]

MAPS = {
    "phi+": phi_plus,
    "phi-": phi_minus,
    "psi+": psi_plus,
    "psi-": psi_minus,
}


def _failure(error: HalfstripError) -> dict:
    numerical = isinstance(error, EvaluationError | InversionError)
    logger.error(f"{type(error).__name__}: {error}")
    return {"success": False, "error": str(error), "numerical": numerical}


def _quadrature(config) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=config.rel_tol, abs_tol=config.abs_tol)


def evaluate_cauchy(expr, points, config) -> dict:
    """
    Cauchy transform of the boundary trace of expr at points off Gamma.

    Returns:
        dict with header, rows (w, region, CF(w), error estimate) and accurate
    """
    geometry = StripGeometry(config.sigma)
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    try:
        F = expr.boundary(geometry)
        values, result = cauchy_transform(F, points, _quadrature(config), full_output=True)
    except HalfstripError as e:
        return _failure(e)

    values = np.atleast_1d(values)
    rows = [
        [complex(w), classify(w, geometry).value, complex(v), float(result.error_estimate)]
        for w, v in zip(points, values, strict=True)
    ]
    return {
        "success": True,
        "header": ["w_re", "w_im", "region", "value_re", "value_im", "error_estimate"],
        "rows": rows,
        "accurate": bool(result.accurate),
    }


def norm_grid(expr, p: float, side: Side, config) -> dict:
    """
    The (s, t, m) grid behind hp_norm_estimate.

    Returns:
        dict with header, rows, value (the estimate) and trend
    """
    side = Side(side)
    geometry = StripGeometry(config.sigma)
    try:
        F = expr.analytic(Domain.for_side(side), geometry)
        estimate = hp_norm_estimate(
            F,
            p,
            side,
            GridSpec(depth=config.depth),
            _quadrature(config),
            threads=config.threads,
        )
    except HalfstripError as e:
        return _failure(e)

    return {
        "success": True,
        "header": ["s", "t", "m"],
        "rows": [[float(s), float(t), float(m)] for s, t, m in estimate.grid],
        "value": estimate.value,
        "trend": estimate.refinement_trend,
        "accurate": True,
    }


def map_points(which: str, points, config) -> dict:
    """Images of points under phi+, phi-, psi+ or psi-."""
    if which not in MAPS:
        return _failure(ParameterError(f"unknown map {which!r}, expected one of {sorted(MAPS)}"))
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    try:
        images = np.atleast_1d(MAPS[which](points, config.sigma))
    except HalfstripError as e:
        return _failure(e)
    return {
        "success": True,
        "header": ["z_re", "z_im", "image_re", "image_im"],
        "rows": [[complex(z), complex(image)] for z, image in zip(points, images, strict=True)],
        "accurate": True,
    }


def decompose_points(expr, points, config, *, alpha: float = 1.0) -> dict:
    """
    Jump components F+ and F- of the boundary trace of expr.

    F+ is reported at points of Omega+ and F- at points of Omega-; at
    points of Gamma both are non-tangential limits and F = F+ + F-.
    Undefined components are nan.
    """
    geometry = StripGeometry(config.sigma)
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    missing = complex(np.nan, np.nan)
    rows = []
    converged = True
    try:
        F_plus, F_minus = jump_decompose(expr.boundary(geometry), _quadrature(config))
        for w in points:
            region = classify(w, geometry)
            if region is Region.OMEGA_PLUS:
                plus, minus = complex(F_plus(w)), missing
            elif region is Region.OMEGA_MINUS:
                plus, minus = missing, complex(F_minus(w))
            else:
                inner = nontangential_limit(F_plus, w, alpha, side=Side.PLUS)
                outer = nontangential_limit(F_minus, w, alpha, side=Side.MINUS)
                plus, minus = inner.limit, outer.limit
                converged = converged and inner.converged and outer.converged
            rows.append([complex(w), region.value, plus, minus, complex(expr(w))])
    except HalfstripError as e:
        return _failure(e)

    return {
        "success": True,
        "header": DECOMPOSE_HEADER,
        "rows": rows,
        "accurate": converged,
    }


def limit_table(expr, zeta0: complex, alpha: float, config, *, side: Side = Side.PLUS) -> dict:
    """
    Non-tangential approach table of the jump component on one side.

    The plus component is the Cauchy transform on Omega+, the minus
    component minus the Cauchy transform on Omega-.
    """
    side = Side(side)
    geometry = StripGeometry(config.sigma)
    try:
        handle = cauchy_handle(expr.boundary(geometry), side, _quadrature(config), side.sign)
        result = nontangential_limit(handle, complex(zeta0), alpha, side=side)
    except HalfstripError as e:
        return _failure(e)

    rows = [[float(r), complex(value), abs(value - result.limit)] for r, value in result.table]
    return {
        "success": True,
        "header": ["r", "value_re", "value_im", "distance_to_limit"],
        "rows": rows,
        "limit": result.limit,
        "accurate": result.converged,
    }


def _overrides(config) -> dict:
    overrides = {
        "sigma": config.sigma,
        "seed": config.seed,
        "rel_tol": config.rel_tol,
        "abs_tol": config.abs_tol,
    }
    if config.p:
        overrides["p_values"] = tuple(config.p)
    return overrides


def verify_checks(
    config,
    check_ids=(),
    *,
    tags=None,
    extended: bool = False,
    timings: bool | None = None,
) -> dict:
    """
    Run the named checks, or every selected check when none is named.

    Returns:
        dict with reports, summary (counts per verdict) and error
    """
    overrides = _overrides(config)
    try:
        if check_ids:
            reports = []
            for check_id in sorted(set(check_ids)):
                reports.append(run_check(check_id, overrides, timings=timings))
        else:
            if not registered_checks(tags, extended=extended):
                raise ParameterError(f"no check carries the tags {sorted(tags or ())}")
            reports = run_all(
                tags,
                extended=extended,
                overrides=overrides,
                threads=config.threads,
                timings=timings,
            )
    except HalfstripError as e:
        return _failure(e)

    summary = summarize(reports)
    logger.info(f"Verification finished: {summary}")
    return {"success": True, "reports": reports, "summary": summary}
