"""Deterministic thread-pool mapping.

Results come back in submission order regardless of thread count, so output
bytes never depend on scheduling. Default worker count comes from the
STABLEVOL_THREADS environment variable, falling back to the CPU count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def default_threads() -> int:
    env = os.environ.get("STABLEVOL_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def parallel_map(fn, items, threads: int = 1) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
