"""Thread-chunked segment reductions.

Every reduction here is computed per CSR segment, and segments are split into
contiguous blocks, one per worker. A segment's result never depends on which
block it landed in, so the output is identical for any thread count.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np

# smallest number of segments worth handing to a separate worker
GRAIN = 4096

# keyed by (role, threads): task workers submit segment work, so the two
# roles never share a pool
_pools: dict[tuple[str, int], ThreadPoolExecutor] = {}
_pools_lock = threading.Lock()


def default_threads() -> int:
    return os.cpu_count() or 1


def executor(threads: int, role: str = "segments") -> ThreadPoolExecutor:
    key = (role, threads)
    with _pools_lock:
        pool = _pools.get(key)
        if pool is None:
            pool = _pools[key] = ThreadPoolExecutor(max_workers=threads, thread_name_prefix=role)
        return pool


def chunk_bounds(n: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(n)`` into at most ``parts`` contiguous nonempty blocks."""
    parts = max(1, min(parts, n))
    edges = [n * i // parts for i in range(parts + 1)]
    return [(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def _reduce_block(ufunc, values, offsets, empty, dtype):
    out = np.full(len(offsets) - 1, empty, dtype=dtype)
    if len(out) == 0:
        return out
    nonempty = offsets[1:] > offsets[:-1]
    if nonempty.any():
        starts = offsets[:-1][nonempty]
        out[nonempty] = ufunc.reduceat(values[: offsets[-1]], starts)
    return out


def segment_reduce(ufunc, values, offsets, empty, threads: int = 1) -> np.ndarray:
    """``ufunc``-reduce ``values`` over each CSR segment; empty segments get ``empty``."""
    values = np.asarray(values)
    offsets = np.asarray(offsets, dtype=np.int64)
    nseg = len(offsets) - 1
    blocks = chunk_bounds(nseg, min(threads, -(-nseg // GRAIN))) if nseg else []
    if len(blocks) <= 1:
        return _reduce_block(ufunc, values, offsets, empty, values.dtype)

    def run(block):
        lo, hi = block
        base = offsets[lo]
        return _reduce_block(ufunc, values[base : offsets[hi]], offsets[lo : hi + 1] - base, empty, values.dtype)

    return np.concatenate(list(executor(threads).map(run, blocks)))


def segment_min(values, offsets, empty, threads: int = 1) -> np.ndarray:
    return segment_reduce(np.minimum, values, offsets, empty, threads)


def segment_sum(values, offsets, threads: int = 1) -> np.ndarray:
    return segment_reduce(np.add, values, offsets, 0, threads)


def parallel_map(fn, items, threads: int = 1) -> list:
    """``list(map(fn, items))``, run on the shared pool when ``threads > 1``."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    return list(executor(threads, "tasks").map(fn, items))
