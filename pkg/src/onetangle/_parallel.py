"""Deterministic process-pool mapping.

Work items are computed independently and reassembled in submission
order, so results (and any files written from them) are identical for
every worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int) -> int:
    """0 means auto-detect; otherwise use the requested count."""
    if threads < 0:
        raise ValueError("threads must be >= 0")
    if threads == 0:
        env = os.environ.get("TANGLE_THREADS", "")
        if env.strip():
            return resolve_threads(int(env))
        return os.cpu_count() or 1
    return threads


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    threads = resolve_threads(threads)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * threads))))
