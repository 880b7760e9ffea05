"""
Services for running experiments and writing their results.
"""

from .experiments import (
    decompose_points,
    evaluate_cauchy,
    limit_table,
    map_points,
    norm_grid,
    verify_checks,
)
from .output import get_report_writer, get_summary_writer, get_table_writer

__all__ = [
    "decompose_points",
    "evaluate_cauchy",
    "limit_table",
    "map_points",
    "norm_grid",
    "verify_checks",
    "get_report_writer",
    "get_summary_writer",
    "get_table_writer",
]
