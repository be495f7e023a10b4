"""One coarsening step from a multi-node matching, and the multilevel chain."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .core import Hypergraph, Params, Policy
from .matching import NO_HEDGE, compute_matching
from .parallel import segment_min

DROPPED = -1
_BIG = np.iinfo(np.int64).max


@dataclass(eq=False)
class CoarseningLevel:
    fine: Hypergraph
    coarse: Hypergraph
    node_parent: np.ndarray  # fine node -> coarse node
    hedge_parent: np.ndarray  # fine hyperedge -> coarse hyperedge or DROPPED


@dataclass(eq=False)
class MultilevelHierarchy:
    original: Hypergraph
    levels: list[CoarseningLevel] = field(default_factory=list)

    @property
    def coarsest(self) -> Hypergraph:
        return self.levels[-1].coarse if self.levels else self.original


def _weighted_count(index, weights, size) -> np.ndarray:
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, index, weights)
    return out


def node_parents(fine: Hypergraph, node_hedge: np.ndarray, threads: int = 1) -> np.ndarray:
    """Map each fine node to its coarse node given the hyperedge it matched to.

    Groups of two or more nodes matched to the same hyperedge become one coarse
    node each (ids in hyperedge order). A node alone in its group joins the
    lightest such group among its matched hyperedge's pins, judged by group
    weights before any singleton joins and broken by smaller coarse id. Every
    other node keeps a coarse node of its own, numbered after the groups in
    fine-id order.
    """
    n, m = fine.num_nodes, fine.num_hedges
    if m == 0:
        return np.arange(n, dtype=np.int64)
    matched = node_hedge != NO_HEDGE
    mh = np.where(matched, node_hedge, 0)
    group_size = np.bincount(mh[matched], minlength=m)

    in_group = matched & (group_size[mh] > 1)
    group_id = np.full(m, -1, dtype=np.int64)
    multi = group_size > 1
    num_groups = int(multi.sum())
    group_id[multi] = np.arange(num_groups)

    parent = np.full(n, -1, dtype=np.int64)
    parent[in_group] = group_id[mh[in_group]]
    group_weight = _weighted_count(parent[in_group], fine.node_weight[in_group], num_groups)

    singles = np.flatnonzero(matched & (group_size[mh] == 1))
    if singles.size and num_groups:
        pins = fine.hedge_pins
        pin_group = parent[pins]  # -1 unless that pin joined a group
        has_group = in_group[pins]
        w = np.where(has_group, group_weight[np.where(has_group, pin_group, 0)], _BIG)
        best_w = segment_min(w, fine.hedge_offsets, _BIG, threads)
        tie = has_group & (w == best_w[fine.pin_hedge])
        best_id = segment_min(np.where(tie, pin_group, _BIG), fine.hedge_offsets, _BIG, threads)
        target = best_id[node_hedge[singles]]
        absorbed = target != _BIG
        parent[singles[absorbed]] = target[absorbed]

    rest = parent < 0
    parent[rest] = num_groups + np.arange(int(rest.sum()))
    return parent


def contract(fine: Hypergraph, parent: np.ndarray) -> tuple[Hypergraph, np.ndarray]:
    """Build the coarse hypergraph induced by ``parent``.

    A fine hyperedge survives iff its pins reach at least two coarse nodes;
    survivors keep their weight and their relative order.
    """
    num_coarse = int(parent.max()) + 1 if parent.size else 0
    node_weight = _weighted_count(parent, fine.node_weight, num_coarse)

    # duplicate parents inside a hyperedge are summed away; columns come out sorted
    incidence = sp.csr_matrix(
        (np.ones(fine.hedge_pins.size, dtype=np.int32), parent[fine.hedge_pins], fine.hedge_offsets),
        shape=(fine.num_hedges, num_coarse),
    )
    incidence.sum_duplicates()
    distinct = np.diff(incidence.indptr)
    keep = distinct > 1
    hedge_parent = np.full(fine.num_hedges, DROPPED, dtype=np.int64)
    hedge_parent[keep] = np.arange(int(keep.sum()))

    row_keep = np.repeat(keep, distinct)
    offsets = np.zeros(int(keep.sum()) + 1, dtype=np.int64)
    np.cumsum(distinct[keep], out=offsets[1:])
    pins = incidence.indices[row_keep].astype(np.int64)
    coarse = Hypergraph.from_csr(num_coarse, offsets, pins, node_weight, fine.hedge_weight[keep])
    return coarse, hedge_parent


def coarsen_once(fine: Hypergraph, policy: Policy | str, threads: int = 1) -> CoarseningLevel:
    matching = compute_matching(fine, policy, threads)
    parent = node_parents(fine, matching.node_hedge, threads)
    coarse, hedge_parent = contract(fine, parent)
    return CoarseningLevel(fine=fine, coarse=coarse, node_parent=parent, hedge_parent=hedge_parent)


def coarsen_chain(g: Hypergraph, params: Params, threads: int = 1) -> MultilevelHierarchy:
    """Coarsen until ``coarse_to`` levels exist, the size stops shrinking, or no hyperedges remain."""
    hierarchy = MultilevelHierarchy(original=g)
    current = g
    while len(hierarchy.levels) < params.coarse_to and current.num_hedges > 0:
        level = coarsen_once(current, params.policy, threads)
        if level.coarse.num_nodes == current.num_nodes:
            break
        hierarchy.levels.append(level)
        current = level.coarse
    return hierarchy
