"""
Named numerical checks of the half-strip Hardy space results.
"""

from .registry import (
    CORE,
    EXTENDED,
    FAIL,
    INCONCLUSIVE,
    PASS,
    Check,
    CheckOutcome,
    VerificationReport,
    get_check,
    registered_checks,
    run_all,
    run_check,
    summarize,
)

__all__ = [
    "CORE",
    "EXTENDED",
    "FAIL",
    "INCONCLUSIVE",
    "PASS",
    "Check",
    "CheckOutcome",
    "VerificationReport",
    "get_check",
    "registered_checks",
    "run_all",
    "run_check",
    "summarize",
]
