"""
CSV writer for plot tooling: comma separated, `.` decimal point, LF line endings.
"""

import csv
import io
import logging
import sys

from .base import BaseTableWriter, WriteResult, expand_complex, format_number

logger = logging.getLogger(__name__)


def render_table(header, rows) -> str:
    """
    Render a table as CSV text.

    Raises:
        ValueError: a row does not have as many columns as the header
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    width = len(header)
    for number, row in enumerate(rows, start=1):
        cells = [cell for value in row for cell in expand_complex(value)]
        if len(cells) != width:
            raise ValueError(f"row {number} has {len(cells)} columns, header has {width}")
        writer.writerow([format_number(cell) for cell in cells])
    return buffer.getvalue()


class CsvTableWriter(BaseTableWriter):
    """Writes rectangular tables as CSV to a file or stdout."""

    def write_table(self, header, rows, path: str | None = None) -> WriteResult:
        rows = list(rows)
        try:
            text = render_table(header, rows)
        except ValueError as e:
            logger.error(f"Table is not rectangular: {e}")
            return WriteResult(success=False, path=path, error=str(e))

        if path is None:
            sys.stdout.write(text)
            return WriteResult(success=True, metadata={"rows": len(rows)})
        try:
            with open(path, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as e:
            logger.error(f"Failed to write table to {path}: {e}")
            return WriteResult(success=False, path=path, error=str(e))

        logger.info(f"Wrote {len(rows)} rows to {path}")
        return WriteResult(success=True, path=path, metadata={"rows": len(rows)})
