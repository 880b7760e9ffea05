"""
Output service for reports and tables.

Provides a unified interface for writing verification reports and
plot-ready tables, with backend abstraction for different formats.
"""

import logging
from importlib import import_module

from ..backends.base import BaseReportWriter, BaseSummaryWriter, BaseTableWriter, WriteResult
from ..settings import halfstrip_settings

logger = logging.getLogger(__name__)

# Cache for backend instances
_report_writer_instance = None
_table_writer_instance = None
_summary_writer_instance = None


def _load_backend(backend_path: str):
    """Load a backend class from a dotted path."""
    module_path, class_name = backend_path.rsplit(".", 1)
    module = import_module(module_path)
    return getattr(module, class_name)


def get_report_writer() -> BaseReportWriter:
    """Get the configured report writer instance."""
    global _report_writer_instance
    if _report_writer_instance is None:
        backend_class = _load_backend(halfstrip_settings.REPORT_BACKEND)
        _report_writer_instance = backend_class()
    return _report_writer_instance


def get_table_writer() -> BaseTableWriter:
    """Get the configured table writer instance."""
    global _table_writer_instance
    if _table_writer_instance is None:
        backend_class = _load_backend(halfstrip_settings.TABLE_BACKEND)
        _table_writer_instance = backend_class()
    return _table_writer_instance


def get_summary_writer() -> BaseSummaryWriter:
    """Get the configured console summary writer instance."""
    global _summary_writer_instance
    if _summary_writer_instance is None:
        backend_class = _load_backend(halfstrip_settings.CONSOLE_BACKEND)
        _summary_writer_instance = backend_class()
    return _summary_writer_instance


def reset_writers() -> None:
    """Forget cached writers so changed settings take effect."""
    global _report_writer_instance, _table_writer_instance, _summary_writer_instance
    _report_writer_instance = None
    _table_writer_instance = None
    _summary_writer_instance = None


def write_reports(reports, path: str | None = None) -> WriteResult:
    """
    Write verification reports with the configured report writer.

    Args:
        reports: VerificationReport objects
        path: Destination file; stdout when omitted

    Returns:
        WriteResult
    """
    return get_report_writer().write_reports(reports, path=path)


def write_table(header, rows, path: str | None = None) -> WriteResult:
    """Write a rectangular table with the configured table writer."""
    return get_table_writer().write_table(header, rows, path=path)


def write_summary(reports, summary: dict) -> WriteResult:
    """Show the run summary with the configured console writer."""
    return get_summary_writer().write_summary(reports, summary)
