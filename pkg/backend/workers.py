"""Ordered fan-out for scans and audits."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

logger = logging.getLogger(__name__)


def ordered_map(fn: Callable, items: Iterable, workers: int = 1) -> list:
    """
    map(fn, items) with results in input order.

    workers > 1 fans out to a process pool; fn and items must be picklable.
    Result order never depends on the worker count.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug("dispatching %d jobs to %d workers", len(items), workers)
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
