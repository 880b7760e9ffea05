"""
Bounded worker pool for independent numerical jobs.

Checks and grid contours are independent, so they may run on a thread
pool.  With a single thread the jobs run synchronously in the caller.
Results always come back in input order.
"""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor

from .settings import halfstrip_settings

logger = logging.getLogger(__name__)


def run_tasks(func: Callable, items: Iterable, threads: int | None = None) -> list:
    """
    Apply func to every item, optionally on a thread pool.

    Args:
        func: Callable of one argument
        items: Inputs
        threads: Worker cap; defaults to HALFSTRIP_THREADS

    Returns:
        List of results in input order
    """
    items = list(items)
    threads = halfstrip_settings.THREADS if threads is None else int(threads)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(threads, len(items))
    logger.debug(f"running {len(items)} jobs on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
