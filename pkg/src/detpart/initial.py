"""Move gains for bipartitions and the batched greedy initial partition."""

from __future__ import annotations

import math

import numpy as np

from .core import Hypergraph, Partition
from .parallel import segment_sum


def compute_gains(h: Hypergraph, part, threads: int = 1) -> np.ndarray:
    """Cut decrease for flipping each node of a 0/1 assignment to the other side.

    A pin alone on its side of a hyperedge gains the hyperedge weight, a pin of
    a hyperedge lying wholly on its side loses it. Single-pin hyperedges never
    change the cut and contribute nothing.
    """
    if isinstance(part, Partition):
        if part.k != 2:
            raise ValueError("gains are defined for bipartitions only")
        part = part.part
    side = np.asarray(part, dtype=np.int64)
    ones = segment_sum(side[h.hedge_pins], h.hedge_offsets, threads)
    deg = h.hedge_degree
    w = np.where(deg < 2, 0, h.hedge_weight)
    # per-hyperedge contribution to a pin on side 0 / side 1
    contrib = np.empty((h.num_hedges, 2), dtype=np.int64)
    for s, count in ((0, deg - ones), (1, ones)):
        contrib[:, s] = np.where(count == 1, w, np.where(count == deg, -w, 0))
    flat = contrib.ravel()[2 * h.node_hedges + side[h.incidence_node]]
    return segment_sum(flat, h.node_offsets, threads)


def top_by_gain(candidates: np.ndarray, gains: np.ndarray, count: int) -> np.ndarray:
    """First ``count`` candidates ordered by gain descending, then node id ascending."""
    if count <= 0 or candidates.size == 0:
        return candidates[:0]
    g = gains[candidates]
    if count < candidates.size:
        # keep everything tied with the count-th best gain, then order exactly
        cutoff = np.partition(-g, count - 1)[count - 1]
        keep = -g <= cutoff
        candidates, g = candidates[keep], g[keep]
    order = np.lexsort((candidates, -g))
    return candidates[order[:count]]


def batch_size(n: int) -> int:
    """Ceiling of the square root of ``n`` (at least 1)."""
    return math.isqrt(n - 1) + 1 if n > 0 else 1


def initial_partition(h: Hypergraph, parts: tuple[int, int] = (1, 1), threads: int = 1) -> Partition:
    """Grow side 0 from empty in batches of the ceil(sqrt(n)) best-gain nodes of side 1.

    Stops as soon as side 0 holds at least its ``parts[0] : parts[1]`` share of
    the total weight. Gains are recomputed after every batch.
    """
    n = h.num_nodes
    part = np.ones(n, dtype=np.int64)
    w0, w1 = 0, h.total_weight
    batch = batch_size(n)
    a, b = parts
    while b * w0 < a * w1:
        gains = compute_gains(h, part, threads)
        chosen = top_by_gain(np.flatnonzero(part == 1), gains, batch)
        part[chosen] = 0
        moved = int(h.node_weight[chosen].sum())
        w0 += moved
        w1 -= moved
    return Partition(part=part, k=2, part_weight=np.array([w0, w1], dtype=np.int64))
