"""
Abstract base classes for output backends.

Projects implement these to send reports and tables somewhere else
(a database, a dashboard, another file format).
"""

import math
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field


@dataclass
class WriteResult:
    """Result of a write operation."""

    success: bool
    path: str | None = None
    error: str | None = None
    metadata: dict | None = field(default_factory=dict)


def report_record(report) -> dict:
    """The JSON-ready record of a report object or an already built dict."""
    if isinstance(report, dict):
        return report
    return report.to_dict()


def expand_complex(value) -> list:
    """A table cell as one or two columns: complex values become (re, im)."""
    if isinstance(value, complex):
        return [value.real, value.imag]
    return [value]


def format_number(value) -> str:
    """Fixed text for floats: repr round-trips exactly, non-finite values spelled out."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


class BaseReportWriter(ABC):
    """Abstract base class for verification report writers."""

    @abstractmethod
    def write_reports(self, reports: Iterable, path: str | None = None) -> WriteResult:
        """
        Write verification reports.

        Args:
            reports: VerificationReport objects (or their dicts)
            path: Destination file; stdout when omitted

        Returns:
            WriteResult with success status and path or error
        """
        pass


class BaseTableWriter(ABC):
    """Abstract base class for tabular (plot-ready) writers."""

    @abstractmethod
    def write_table(
        self,
        header: Sequence[str],
        rows: Iterable[Sequence],
        path: str | None = None,
    ) -> WriteResult:
        """
        Write a rectangular table.

        Args:
            header: Column names, complex columns already split into re/im names
            rows: Rows of cells; complex cells expand to two columns
            path: Destination file; stdout when omitted

        Returns:
            WriteResult with success status and path or error
        """
        pass


class BaseSummaryWriter(ABC):
    """Abstract base class for human-readable run summaries."""

    @abstractmethod
    def write_summary(self, reports: Iterable, summary: dict) -> WriteResult:
        """
        Show a summary of a verification run.

        Args:
            reports: VerificationReport objects (or their dicts)
            summary: Counts per verdict

        Returns:
            WriteResult
        """
        pass
