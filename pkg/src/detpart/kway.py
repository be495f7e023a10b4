"""Multilevel bipartition pipeline and level-synchronous recursive bisection."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coarsening import MultilevelHierarchy, coarsen_chain
from .core import Hypergraph, Params, Partition
from .initial import compute_gains, initial_partition, top_by_gain
from .metrics import part_cap
from .parallel import parallel_map, segment_sum
from .refinement import project, rebalance, refine


class TooManyParts(ValueError):
    pass


@dataclass
class RunStats:
    """Counters filled in by :func:`kway_partition` and :func:`bipartition`."""

    bisection_levels: int = 0
    bisections: int = 0
    coarsening_levels: int = 0  # deepest hierarchy built
    infeasible: int = 0  # bisections whose bounds could not be met
    keep_hierarchies: bool = False
    hierarchies: list[MultilevelHierarchy] = field(default_factory=list)

    def record(self, hierarchy: MultilevelHierarchy, feasible: bool) -> None:
        self.bisections += 1
        self.coarsening_levels = max(self.coarsening_levels, len(hierarchy.levels))
        self.infeasible += not feasible
        if self.keep_hierarchies:
            self.hierarchies.append(hierarchy)


def _bipartition(g, params, parts, cap, threads):
    hierarchy = coarsen_chain(g, params, threads)
    coarsest = hierarchy.coarsest
    eps = params.epsilon

    p = initial_partition(coarsest, parts, threads)
    p = refine(coarsest, p, params.refine_iters, threads)
    p, feasible = rebalance(coarsest, p, eps, parts, cap, threads)
    for level in reversed(hierarchy.levels):
        p = project(p, level)
        p = refine(level.fine, p, params.refine_iters, threads)
        p, feasible = rebalance(level.fine, p, eps, parts, cap, threads)
    return p, hierarchy, feasible


def bipartition(
    g: Hypergraph,
    params: Params,
    parts: tuple[int, int] = (1, 1),
    cap: int | None = None,
    threads: int = 1,
    stats: RunStats | None = None,
) -> Partition:
    """Coarsen, split the coarsest graph, then project and refine back up.

    ``parts`` is the number of final parts each side will later hold and
    ``cap`` the integer weight limit per final part; both default to a plain
    balanced bisection of ``g`` under ``params.epsilon``.
    """
    if g.num_nodes < 1:
        raise ValueError("cannot bipartition an empty hypergraph")
    if cap is None:
        cap = part_cap(g.total_weight, sum(parts), params.epsilon)
    p, hierarchy, feasible = _bipartition(g, params, parts, cap, threads)
    if stats is not None:
        stats.record(hierarchy, feasible)
    return p


def induced_subgraph(g: Hypergraph, nodes: np.ndarray, threads: int = 1) -> Hypergraph:
    """Sub-hypergraph on ``nodes`` (ascending ids), keeping hyperedges with >= 2 retained pins.

    Node and hyperedge ids are compacted in ascending original order.
    """
    local = np.full(g.num_nodes, -1, dtype=np.int64)
    local[nodes] = np.arange(nodes.size)
    inside = local[g.hedge_pins] >= 0
    retained = segment_sum(inside.astype(np.int64), g.hedge_offsets, threads)
    keep = retained >= 2
    sel = inside & keep[g.pin_hedge]
    offsets = np.zeros(int(keep.sum()) + 1, dtype=np.int64)
    np.cumsum(retained[keep], out=offsets[1:])
    return Hypergraph.from_csr(
        nodes.size, offsets, local[g.hedge_pins[sel]], g.node_weight[nodes], g.hedge_weight[keep]
    )


def _ensure_min_nodes(h: Hypergraph, p: Partition, parts, threads) -> Partition:
    """Give each side at least as many nodes as final parts it must hold."""
    part = p.part.copy()
    for side in (0, 1):
        short = parts[side] - int((part == side).sum())
        if short > 0:
            gains = compute_gains(h, part, threads)
            donors = np.flatnonzero(part == 1 - side)
            part[top_by_gain(donors, gains, short)] = side
    return Partition.from_parts(part, 2, h.node_weight)


@dataclass
class _Task:
    nodes: np.ndarray  # original node ids, ascending
    k: int
    offset: int  # first final part id of this subtree


def kway_partition(
    g: Hypergraph, params: Params, threads: int = 1, stats: RunStats | None = None
) -> Partition:
    """Split ``g`` into ``params.k`` parts by bisecting all open subgraphs level by level.

    A subgraph that must end up as ``k_j`` parts is split ceil(k_j/2) :
    floor(k_j/2), each side limited to its part count times the integer
    per-part cap of the whole graph. Part ids follow depth-first order of the
    bisection tree. All subgraphs of one level are independent and run
    concurrently.
    """
    k = params.k
    if k > g.num_nodes:
        raise TooManyParts(f"more parts than nodes ({k} > {g.num_nodes})")
    stats = stats if stats is not None else RunStats()
    cap = part_cap(g.total_weight, k, params.epsilon)
    result = np.zeros(g.num_nodes, dtype=np.int64)
    tasks = [_Task(np.arange(g.num_nodes, dtype=np.int64), k, 0)]

    def bisect(task: _Task):
        sub = induced_subgraph(g, task.nodes)
        parts = ((task.k + 1) // 2, task.k // 2)
        p, hierarchy, feasible = _bipartition(sub, params, parts, cap, threads)
        p = _ensure_min_nodes(sub, p, parts, threads)
        return p, parts, hierarchy, feasible

    while any(t.k > 1 for t in tasks):
        stats.bisection_levels += 1
        active = [t for t in tasks if t.k > 1]
        done = [t for t in tasks if t.k == 1]
        outcomes = parallel_map(bisect, active, threads)
        tasks = done
        for task, (p, parts, hierarchy, feasible) in zip(active, outcomes):
            stats.record(hierarchy, feasible)
            tasks.append(_Task(task.nodes[p.part == 0], parts[0], task.offset))
            tasks.append(_Task(task.nodes[p.part == 1], parts[1], task.offset + parts[0]))

    for t in tasks:
        result[t.nodes] = t.offset
    return Partition.from_parts(result, k, g.node_weight)


def partition(g: Hypergraph, params: Params, threads: int = 1, stats: RunStats | None = None) -> Partition:
    """Entry point used by the CLI: k-way partition with the given parameters."""
    return kway_partition(g, params, threads, stats)
