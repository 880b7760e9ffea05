"""
Run configuration of the command line.

Defaults come from settings; a key-value file overrides them and command
line flags override the file.  The file format is one ``key = value`` per
line, ``#`` comments, UTF-8:

    sigma = 1.0
    p = 1.25, 2.0
    rel_tol = 1e-10
    depth = 16
"""

import logging
from dataclasses import dataclass, field, fields, replace

from ..exceptions import ConfigurationError
from ..settings import halfstrip_settings

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")
MIN_DEPTH = 4
MAX_DEPTH = 24


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one command line run."""

    sigma: float = 1.0
    p: tuple = ()
    rel_tol: float = field(default_factory=lambda: halfstrip_settings.QUAD_REL_TOL)
    abs_tol: float = field(default_factory=lambda: halfstrip_settings.QUAD_ABS_TOL)
    depth: int = field(default_factory=lambda: halfstrip_settings.GRID_DEPTH)
    seed: int = field(default_factory=lambda: halfstrip_settings.SEED)
    threads: int = field(default_factory=lambda: halfstrip_settings.THREADS)
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigurationError(f"sigma must be positive, got {self.sigma}")
        if not self.rel_tol > 0 or not self.abs_tol > 0:
            raise ConfigurationError("quadrature tolerances must be positive")
        if not MIN_DEPTH <= self.depth <= MAX_DEPTH:
            raise ConfigurationError(
                f"grid depth must lie in [{MIN_DEPTH}, {MAX_DEPTH}], got {self.depth}"
            )
        if self.threads < 1:
            raise ConfigurationError(f"threads must be at least 1, got {self.threads}")
        if any(not value > 0 for value in self.p):
            raise ConfigurationError(f"exponents must be positive, got {self.p}")
        if self.format not in FORMATS:
            raise ConfigurationError(f"format must be one of {FORMATS}, got {self.format!r}")

    def override(self, **changes) -> "RunConfig":
        """A copy with the given fields replaced; None values are ignored."""
        changes = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **changes)

    def to_text(self) -> str:
        """The key-value file representation."""
        lines = []
        for item in fields(self):
            value = getattr(self, item.name)
            if item.name == "p":
                text = ", ".join(repr(float(v)) for v in value)
            elif value is None:
                text = ""
            else:
                text = repr(value) if isinstance(value, float) else str(value)
            lines.append(f"{item.name} = {text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, base: "RunConfig | None" = None) -> "RunConfig":
        """
        Parse a key-value file, starting from base (or the defaults).

        Raises:
            ConfigurationError: Unknown key, duplicate key or malformed value
        """
        known = {item.name for item in fields(cls)}
        changes = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in known:
                raise ConfigurationError(f"line {number}: unknown entry {raw.strip()!r}")
            if key in changes:
                raise ConfigurationError(f"line {number}: {key} given twice")
            try:
                changes[key] = _cast(key, value)
            except ValueError as e:
                raise ConfigurationError(f"line {number}: invalid {key}: {e}") from e
        base = base or cls()
        return replace(base, **changes)

    @classmethod
    def load(cls, path: str, base: "RunConfig | None" = None) -> "RunConfig":
        """Read a key-value file from disk."""
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            raise ConfigurationError(f"cannot read config file {path}: {e}") from e
        logger.info(f"Loaded run configuration from {path}")
        return cls.from_text(text, base)


def _cast(key: str, value: str):
    if key == "p":
        return tuple(float(item) for item in value.split(",") if item.strip())
    if key in ("sigma", "rel_tol", "abs_tol"):
        return float(value)
    if key in ("depth", "seed", "threads"):
        return int(value)
    if key == "output":
        return value or None
    return value
