"""
Settings for halfstrip.

Override through environment variables with the HALFSTRIP_ prefix:
    HALFSTRIP_QUAD_REL_TOL=1e-8
    HALFSTRIP_THREADS=4
    HALFSTRIP_REPORT_BACKEND=mypackage.writers.YamlReportWriter
"""

import os

from .exceptions import ConfigurationError

PREFIX = "HALFSTRIP_"

_TRUE_VALUES = {"1", "true", "yes", "on"}
_FALSE_VALUES = {"0", "false", "no", "off", ""}


def _read(name: str, default, cast):
    raw = os.environ.get(PREFIX + name)
    if raw is None:
        return default
    try:
        value = cast(raw.strip())
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"{PREFIX}{name}={raw!r} is not a valid value: {exc}") from exc
    return value


def _positive(cast):
    def convert(raw: str):
        value = cast(raw)
        if value <= 0:
            raise ValueError("must be positive")
        return value

    return convert


def _boolean(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in _TRUE_VALUES:
        return True
    if lowered in _FALSE_VALUES:
        return False
    raise ValueError("expected a boolean")


class HalfstripSettings:
    """
    Settings for halfstrip.

    Every property re-reads the environment, so tests can monkeypatch
    variables without reloading the module:
        HALFSTRIP_GRID_DEPTH=20
        HALFSTRIP_SEED=7
    """

    @property
    def QUAD_REL_TOL(self):
        """Relative tolerance of the adaptive contour quadrature."""
        return _read("QUAD_REL_TOL", 1e-10, _positive(float))

    @property
    def QUAD_ABS_TOL(self):
        """Absolute tolerance of the adaptive contour quadrature."""
        return _read("QUAD_ABS_TOL", 1e-12, _positive(float))

    @property
    def QUAD_MAX_SUBDIVISIONS(self):
        """Maximum number of adaptive subintervals per quadrature piece."""
        return _read("QUAD_MAX_SUBDIVISIONS", 2000, _positive(int))

    @property
    def GRID_DEPTH(self):
        """
        Number J of contours in the H^p norm grid.

        The grid approaches the corner of the (s, t) family geometrically,
        s_j = sigma(1 - 2^-j), t_j = 2^-j for j = 1..J.
        """
        return _read("GRID_DEPTH", 16, _positive(int))

    @property
    def SEED(self):
        """Seed for every pseudo-random sample (probes, random points)."""
        return _read("SEED", 20170826, int)

    @property
    def THREADS(self):
        """Worker thread cap for checks and grid evaluation. 1 runs synchronously."""
        return _read("THREADS", 1, _positive(int))

    @property
    def SNAP_TOLERANCE(self):
        """Relative distance under which a point is classified onto the contour."""
        return _read("SNAP_TOLERANCE", 1e-12, float)

    @property
    def RECORD_TIMINGS(self):
        """
        Whether verification reports carry measured wall time.

        Defaults to False so repeated runs produce byte-identical reports.
        """
        return _read("RECORD_TIMINGS", False, _boolean)

    @property
    def REPORT_BACKEND(self):
        """Report writer class path."""
        return os.environ.get(
            PREFIX + "REPORT_BACKEND",
            "halfstrip.backends.json_report.JsonReportWriter",
        )

    @property
    def TABLE_BACKEND(self):
        """Table writer class path."""
        return os.environ.get(
            PREFIX + "TABLE_BACKEND",
            "halfstrip.backends.csv_report.CsvTableWriter",
        )

    @property
    def CONSOLE_BACKEND(self):
        """Console summary writer class path."""
        return os.environ.get(
            PREFIX + "CONSOLE_BACKEND",
            "halfstrip.backends.console.ConsoleSummaryWriter",
        )


halfstrip_settings = HalfstripSettings()
