"""
Console summary backend.

Prints a verdict table to stderr so that stdout stays free for reports.
"""

import logging
import sys

from .base import BaseSummaryWriter, WriteResult, report_record

logger = logging.getLogger(__name__)


class ConsoleSummaryWriter(BaseSummaryWriter):
    """Summary writer that prints to the console."""

    def __init__(self, stream=None):
        self.stream = stream

    def write_summary(self, reports, summary: dict) -> WriteResult:
        stream = self.stream or sys.stderr
        records = [report_record(report) for report in reports]

        def emit(line=""):
            print(line, file=stream)

        emit("=" * 60)
        emit("VERIFICATION SUMMARY")
        emit("=" * 60)
        for record in records:
            emit(
                f"{record['check_id']:<10} {record['verdict']:<13} "
                f"max_violation={record['max_violation']:.3e} "
                f"tolerance={record['tolerance']:.3e}"
            )
        emit("-" * 60)
        counts = ", ".join(f"{verdict}: {count}" for verdict, count in sorted(summary.items()))
        emit(f"{len(records)} checks ({counts})")
        emit("=" * 60)

        logger.info(f"Console summary of {len(records)} checks")
        return WriteResult(success=True, metadata={"count": len(records)})
