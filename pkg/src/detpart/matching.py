"""Deterministic multi-node matching.

Each hyperedge gets a policy key and a hashed tie-break key; every node then
picks, by three successive min-reductions, the incident hyperedge with the
smallest (key, hash) and finally the smallest id among equal hashes. Each
field is a pure min over a fixed set, so any evaluation order gives the
same answer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, Policy
from .parallel import segment_min

MASK64 = (1 << 64) - 1
SENTINEL = np.uint64(MASK64)  # unmatched / no candidate
MAXKEY = MASK64 - 1
NO_HEDGE = np.iinfo(np.int64).max

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    z = (x + _GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64_array(x) -> np.ndarray:
    """Vectorised :func:`splitmix64` (uint64 arithmetic wraps mod 2**64)."""
    z = np.asarray(x).astype(np.uint64) + np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def hedge_priorities(h: Hypergraph, policy: Policy | str) -> np.ndarray:
    """Policy key of every hyperedge as uint64; smaller key means higher priority."""
    policy = Policy(policy)
    maxkey = np.uint64(MAXKEY)
    if policy is Policy.LDH:
        return h.hedge_degree.astype(np.uint64)
    if policy is Policy.HDH:
        return maxkey - h.hedge_degree.astype(np.uint64)
    if policy is Policy.LWD:
        return h.hedge_weight.astype(np.uint64)
    if policy is Policy.HWD:
        return maxkey - h.hedge_weight.astype(np.uint64)
    return splitmix64_array(np.arange(h.num_hedges))


def hedge_priority(policy: Policy | str, e: int, h: Hypergraph) -> int:
    """Scalar form of :func:`hedge_priorities` for a single hyperedge."""
    policy = Policy(policy)
    if policy is Policy.LDH:
        return int(h.hedge_degree[e])
    if policy is Policy.HDH:
        return MAXKEY - int(h.hedge_degree[e])
    if policy is Policy.LWD:
        return int(h.hedge_weight[e])
    if policy is Policy.HWD:
        return MAXKEY - int(h.hedge_weight[e])
    return splitmix64(e)


@dataclass(eq=False)
class MatchingState:
    node_priority: np.ndarray  # uint64, SENTINEL for isolated nodes
    node_rand: np.ndarray  # uint64, SENTINEL for isolated nodes
    node_hedge: np.ndarray  # int64, NO_HEDGE for isolated nodes
    hedge_priority: np.ndarray
    hedge_rand: np.ndarray

    def same_as(self, other: "MatchingState") -> bool:
        return all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in ("node_priority", "node_rand", "node_hedge", "hedge_priority", "hedge_rand")
        )


def compute_matching(h: Hypergraph, policy: Policy | str, threads: int = 1) -> MatchingState:
    hp = hedge_priorities(h, policy)
    hr = splitmix64_array(np.arange(h.num_hedges))
    nh = h.node_hedges
    deg = h.node_degree

    inc_pri = hp[nh]
    node_pri = segment_min(inc_pri, h.node_offsets, SENTINEL, threads)

    inc_rand = hr[nh]
    cand = np.where(inc_pri == np.repeat(node_pri, deg), inc_rand, SENTINEL)
    node_rand = segment_min(cand, h.node_offsets, SENTINEL, threads)

    cand = np.where(inc_rand == np.repeat(node_rand, deg), nh, NO_HEDGE)
    node_hedge = segment_min(cand, h.node_offsets, NO_HEDGE, threads)

    return MatchingState(node_pri, node_rand, node_hedge, hp, hr)


def groups_of(m: MatchingState, h: Hypergraph) -> list[tuple[int, list[int]]]:
    """Nodes grouped by the hyperedge they matched to, ordered by hyperedge id."""
    matched = np.flatnonzero(m.node_hedge != NO_HEDGE)
    if matched.size == 0:
        return []
    keys = m.node_hedge[matched]
    order = np.argsort(keys, kind="stable")
    keys, nodes = keys[order], matched[order]
    cuts = np.flatnonzero(np.diff(keys)) + 1
    return [
        (int(ks[0]), ns.tolist())
        for ks, ns in zip(np.split(keys, cuts), np.split(nodes, cuts))
    ]
