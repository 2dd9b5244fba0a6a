"""Order-preserving parallel map for grid and prime scans."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: Optional[int]) -> int:
    """``None`` or ``0`` means one worker per CPU."""
    if not jobs:
        return os.cpu_count() or 1
    if jobs < 0:
        raise ValueError(f"jobs must be non-negative, got {jobs}")
    return jobs


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = 1) -> list[R]:
    """``list(map(fn, items))``, optionally spread over worker processes.

    Results always come back in input order, so output never depends on the
    number of workers. ``fn`` must be picklable when ``jobs != 1``.
    """
    items = list(items)
    workers = min(resolve_jobs(jobs), max(len(items), 1))
    if workers == 1:
        return [fn(item) for item in items]
    chunksize = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
