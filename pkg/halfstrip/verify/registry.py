"""
Registry of named verification checks and the runner that turns their
outcomes into reports.

A check is a function of a resolved parameter dict returning a
CheckOutcome.  The runner applies the verdict rule:

    effective tolerance = max(tolerance, 10 * error estimate)
    inconclusive        when quadrature did not converge or the error
                        estimate exceeds the check's ceiling
    pass                when max_violation <= effective tolerance
    fail                otherwise
"""

import logging
import math
import sys
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from ..exceptions import HalfstripError, ParameterError, UnknownCheckError
from ..settings import halfstrip_settings
from ..tasks import run_tasks
from .references import REFERENCE_MAP

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
VERDICTS = (PASS, FAIL, INCONCLUSIVE)

CORE = "core"
EXTENDED = "extended"

DEFAULT_P_VALUES = (1.25, 1.5, 2.0, 3.0, 4.0)

_REGISTRY: dict[str, "Check"] = {}


@dataclass
class CheckOutcome:
    """What a check measured, before the verdict rule is applied."""

    max_violation: float
    error_estimate: float = 0.0
    converged: bool = True
    samples: int = 0
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Check:
    """A registered check with its declared parameters."""

    check_id: str
    title: str
    runner: Callable[[dict], CheckOutcome]
    tags: frozenset
    defaults: dict
    ceiling: float

    @property
    def reference(self) -> str:
        return REFERENCE_MAP[self.check_id]

    @property
    def parameter_names(self) -> set:
        return set(common_defaults()) | set(self.defaults)


@dataclass
class VerificationReport:
    """Result of one check run."""

    check_id: str
    paper_ref: str
    params: dict
    samples: int
    max_violation: float
    tolerance: float
    verdict: str
    runtime_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        """The JSON record: exactly the published report fields."""
        params = {key: _jsonable(value) for key, value in sorted(self.params.items())}
        params["samples"] = int(self.samples)
        return {
            "check_id": self.check_id,
            "paper_ref": self.paper_ref,
            "params": params,
            "max_violation": _finite(self.max_violation),
            "tolerance": _finite(self.tolerance),
            "verdict": self.verdict,
            "runtime_ms": float(self.runtime_ms),
        }


def _finite(value) -> float:
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return sys.float_info.max
    return value


def _jsonable(value):
    if isinstance(value, tuple | list):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float):
        return _finite(value)
    return value


def common_defaults() -> dict:
    """Parameters every check accepts, read from settings at run time."""
    return {
        "sigma": 1.0,
        "seed": halfstrip_settings.SEED,
        "rel_tol": halfstrip_settings.QUAD_REL_TOL,
        "abs_tol": halfstrip_settings.QUAD_ABS_TOL,
    }


def register(
    check_id: str,
    title: str,
    *,
    tags: Iterable[str] = (CORE,),
    defaults: dict | None = None,
    ceiling: float = 1e-3,
):
    """
    Decorator registering a check runner under check_id.

    Every check declares a ``tolerance`` default; the other defaults are
    the overridable parameters specific to the check.
    """
    defaults = dict(defaults or {})
    if "tolerance" not in defaults:
        raise ValueError(f"check {check_id} must declare a tolerance")
    if check_id not in REFERENCE_MAP:
        raise ValueError(f"check {check_id} has no entry in the reference map")

    def decorator(runner):
        _REGISTRY[check_id] = Check(
            check_id=check_id,
            title=title,
            runner=runner,
            tags=frozenset(tags),
            defaults=defaults,
            ceiling=ceiling,
        )
        return runner

    return decorator


def _ensure_loaded() -> None:
    from . import checks  # noqa: F401


def get_check(check_id: str) -> Check:
    """
    Look up a registered check.

    Raises:
        UnknownCheckError: No check is registered under check_id
    """
    _ensure_loaded()
    try:
        return _REGISTRY[check_id]
    except KeyError:
        raise UnknownCheckError(f"unknown check {check_id!r}") from None


def registered_checks(tags: Iterable[str] | None = None, *, extended: bool = False) -> list[Check]:
    """
    Checks sorted by id.

    Without tags only core checks are returned, plus the extended ones when
    asked.  With tags, every check sharing a tag is returned.
    """
    _ensure_loaded()
    checks = sorted(_REGISTRY.values(), key=lambda check: check.check_id)
    if tags:
        wanted = set(tags)
        if not extended and EXTENDED not in wanted:
            checks = [check for check in checks if EXTENDED not in check.tags]
        return [check for check in checks if check.tags & wanted]
    allowed = {CORE, EXTENDED} if extended else {CORE}
    return [check for check in checks if check.tags & allowed]


def _cast(name: str, default, value):
    if isinstance(default, bool):
        if isinstance(value, str):
            lowered = value.strip().lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(f"expected a boolean, got {value!r}")
            return lowered in ("true", "1", "yes")
        return bool(value)
    if isinstance(default, int):
        if isinstance(value, float) and not value.is_integer():
            raise ValueError(f"expected an integer, got {value!r}")
        return int(value)
    if isinstance(default, float):
        return float(value)
    if isinstance(default, tuple):
        if isinstance(value, str):
            value = [item for item in value.replace(";", ",").split(",") if item.strip()]
        items = tuple(float(item) for item in value)
        if not items:
            raise ValueError("expected at least one value")
        return items
    return value


def _validate(name: str, value) -> None:
    if name == "sigma" and not value > 0:
        raise ValueError("sigma must be positive")
    if name in ("rel_tol", "abs_tol") and not value > 0:
        raise ValueError("quadrature tolerances must be positive")
    if name == "tolerance" and not value >= 0:
        raise ValueError("tolerance must be non-negative")
    if name == "p_values" and any(not p > 0 for p in value):
        raise ValueError("exponents must be positive")


def resolve_params(check: Check, overrides: dict | None = None) -> dict:
    """
    Merge overrides into the check's defaults, casting to the default types.

    Raises:
        ParameterError: Unknown parameter or invalid value
    """
    params = {**common_defaults(), **check.defaults}
    for name, value in (overrides or {}).items():
        if name not in params:
            raise ParameterError(f"{check.check_id} has no parameter {name!r}")
        try:
            cast = _cast(name, params[name], value)
            _validate(name, cast)
        except (TypeError, ValueError) as e:
            raise ParameterError(f"invalid value for {check.check_id}.{name}: {e}") from e
        params[name] = cast
    return params


def verdict_of(outcome: CheckOutcome, tolerance: float, ceiling: float) -> tuple[str, float]:
    """The verdict and the effective tolerance for an outcome."""
    error = float(outcome.error_estimate)
    effective = max(float(tolerance), 10.0 * error)
    if not outcome.converged or error > ceiling:
        return INCONCLUSIVE, effective
    if outcome.max_violation <= effective:
        return PASS, effective
    return FAIL, effective


def run_check(
    check_id: str, overrides: dict | None = None, *, timings: bool | None = None
) -> "VerificationReport":
    """
    Run one check deterministically and return its report.

    Numerical failures inside the check become inconclusive reports.

    Raises:
        UnknownCheckError: check_id is not registered
        ParameterError: An override is unknown or invalid
    """
    check = get_check(check_id)
    params = resolve_params(check, overrides)
    timings = halfstrip_settings.RECORD_TIMINGS if timings is None else timings
    logger.info(f"Running {check_id}: {check.title}")

    started = time.perf_counter()
    try:
        outcome = check.runner(params)
    except HalfstripError as e:
        logger.warning(f"{check_id} stopped on a numerical error: {e}")
        outcome = CheckOutcome(
            max_violation=math.inf, converged=False, details={"error": str(e)}
        )
    elapsed = (time.perf_counter() - started) * 1000.0

    verdict, tolerance = verdict_of(outcome, params["tolerance"], check.ceiling)
    logger.info(
        f"{check_id}: {verdict} (max_violation={outcome.max_violation:.3e}, "
        f"tolerance={tolerance:.3e})"
    )
    return VerificationReport(
        check_id=check_id,
        paper_ref=check.reference,
        params=params,
        samples=outcome.samples,
        max_violation=outcome.max_violation,
        tolerance=tolerance,
        verdict=verdict,
        runtime_ms=round(elapsed, 3) if timings else 0.0,
        details=outcome.details,
    )


def run_all(
    tags: Iterable[str] | None = None,
    *,
    extended: bool = False,
    overrides: dict | None = None,
    threads: int | None = None,
    timings: bool | None = None,
) -> list[VerificationReport]:
    """
    Run every selected check; reports come back ordered by check_id.

    Overrides are applied to the checks that declare them.

    Raises:
        ParameterError: An override is declared by none of the selected checks
    """
    checks = registered_checks(tags, extended=extended)
    overrides = dict(overrides or {})
    known = set().union(*(check.parameter_names for check in checks)) if checks else set()
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ParameterError(f"no selected check has the parameters {unknown}")

    def run(check):
        own = {key: value for key, value in overrides.items() if key in check.parameter_names}
        return run_check(check.check_id, own, timings=timings)

    return run_tasks(run, checks, threads)


def summarize(reports: Iterable[VerificationReport]) -> dict:
    """Counts per verdict."""
    counts = dict.fromkeys(VERDICTS, 0)
    for report in reports:
        counts[report.verdict] += 1
    return counts
