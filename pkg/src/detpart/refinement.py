"""Projection of a coarse bipartition, parallel swap refinement and rebalancing."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .coarsening import CoarseningLevel
from .core import Hypergraph, Partition
from .initial import batch_size, compute_gains, top_by_gain
from .metrics import part_cap


def project(p_coarse: Partition, level: CoarseningLevel) -> Partition:
    part = p_coarse.part[level.node_parent]
    return Partition.from_parts(part, p_coarse.k, level.fine.node_weight)


def refine(h: Hypergraph, p: Partition, iters: int, threads: int = 1) -> Partition:
    """Swap equally many non-negative-gain nodes between the sides, ``iters`` times.

    Gains are computed once per round and not updated between the flips of
    that round, so a round can transiently raise the cut.
    """
    part = p.part.copy()
    for _ in range(iters):
        gains = compute_gains(h, part, threads)
        left = np.flatnonzero((part == 0) & (gains >= 0))
        right = np.flatnonzero((part == 1) & (gains >= 0))
        count = min(left.size, right.size)
        if count == 0:
            break
        to_right = top_by_gain(left, gains, count)
        to_left = top_by_gain(right, gains, count)
        part[to_right] = 1
        part[to_left] = 0
    return Partition.from_parts(part, 2, h.node_weight)


class Rebalanced(NamedTuple):
    partition: Partition
    feasible: bool


def side_bounds(total_weight: int, epsilon, parts=(1, 1), cap: int | None = None) -> tuple[int, int]:
    """Weight limit of each side when side ``i`` will hold ``parts[i]`` final parts.

    ``cap`` is the integer per-part limit; by default it is derived from the
    weight being split and ``parts[0] + parts[1]``.
    """
    if cap is None:
        cap = part_cap(total_weight, parts[0] + parts[1], epsilon)
    return parts[0] * cap, parts[1] * cap


def rebalance(
    h: Hypergraph,
    p: Partition,
    epsilon,
    parts=(1, 1),
    cap: int | None = None,
    threads: int = 1,
) -> Rebalanced:
    """Move best-gain nodes off the overweight side until both sides fit their bounds.

    Moves happen in batches of at most ceil(sqrt(n)) between gain
    recomputations and stop the moment the bounds hold. A node is never moved
    if it would push the receiving side over its own bound; when no node can
    move the best partition reached is returned with ``feasible=False``.
    """
    bounds = side_bounds(h.total_weight, epsilon, parts, cap)
    part = p.part.copy()
    weight = [int(x) for x in p.part_weight]
    nw = h.node_weight
    batch = batch_size(h.num_nodes)

    while True:
        if weight[0] > bounds[0]:
            heavy = 0
        elif weight[1] > bounds[1]:
            heavy = 1
        else:
            return Rebalanced(Partition.from_parts(part, 2, nw), True)
        light = 1 - heavy
        room = bounds[light] - weight[light]
        cand = np.flatnonzero((part == heavy) & (nw <= room))
        if cand.size == 0:
            return Rebalanced(Partition.from_parts(part, 2, nw), False)
        gains = compute_gains(h, part, threads)
        moved = 0
        for v in top_by_gain(cand, gains, batch).tolist():
            w = int(nw[v])
            if weight[light] + w > bounds[light]:
                continue
            part[v] = light
            weight[heavy] -= w
            weight[light] += w
            moved += 1
            if weight[heavy] <= bounds[heavy]:
                break
        if moved == 0:
            return Rebalanced(Partition.from_parts(part, 2, nw), False)
