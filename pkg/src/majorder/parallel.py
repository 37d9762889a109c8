"""Order-preserving fan-out of pure work over a process pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunked_map(fn: Callable[[Sequence[T]], list[R]], items: Sequence[T], workers: int = 1) -> list[R]:
    """Apply ``fn`` to contiguous chunks of ``items`` and concatenate in input order.

    ``fn`` must be picklable when ``workers > 1``. With one worker everything
    runs in-process, which keeps timings deterministic.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return list(fn(items))
    size = -(-len(items) // (workers * 4))
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    out: list[R] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(fn, chunks):
            out.extend(part)
    return out
