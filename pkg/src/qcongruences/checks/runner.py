"""Order-preserving fan-out of independent checks."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from ..config import config
from ..errors import SpecError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Apply fn to every item, possibly concurrently; results keep the input order.

    threads=0 lets the executor pick its default worker count, threads=1 runs inline.
    """
    threads = config.limits.threads if threads is None else threads
    if threads < 0:
        raise SpecError(f"threads must be >= 0 (0 = auto), got {threads}")
    work = list(items)
    if threads == 1 or len(work) <= 1:
        return [fn(item) for item in work]
    logger.debug("running %d checks on %s threads", len(work), threads or "auto")
    with ThreadPoolExecutor(max_workers=threads or None) as pool:
        return list(pool.map(fn, work))
