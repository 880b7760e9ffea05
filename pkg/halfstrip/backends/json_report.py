"""
Canonical JSON report writer.

Reports are written as a JSON array with sorted keys and a trailing
newline, so identical runs produce identical bytes.
"""

import json
import logging
import sys

from .base import BaseReportWriter, WriteResult, report_record

logger = logging.getLogger(__name__)


def dumps_reports(reports) -> str:
    records = [report_record(report) for report in reports]
    return json.dumps(records, sort_keys=True, indent=2, allow_nan=False) + "\n"


class JsonReportWriter(BaseReportWriter):
    """Writes reports as canonical JSON to a file or stdout."""

    def write_reports(self, reports, path: str | None = None) -> WriteResult:
        reports = list(reports)
        try:
            text = dumps_reports(reports)
        except (TypeError, ValueError) as e:
            logger.error(f"Could not serialize {len(reports)} reports: {e}")
            return WriteResult(success=False, error=str(e))

        if path is None:
            sys.stdout.write(text)
            return WriteResult(success=True, metadata={"count": len(reports)})
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        except OSError as e:
            logger.error(f"Failed to write reports to {path}: {e}")
            return WriteResult(success=False, path=path, error=str(e))

        logger.info(f"Wrote {len(reports)} reports to {path}")
        return WriteResult(success=True, path=path, metadata={"count": len(reports)})
