"""Shared data types: the dual-CSR hypergraph, bipartitions and run parameters."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class MalformedInput(ValueError):
    """Raised when raw arrays do not describe a hypergraph."""


class Policy(str, enum.Enum):
    LDH = "LDH"  # low degree first
    HDH = "HDH"  # high degree first
    LWD = "LWD"  # low weight first
    HWD = "HWD"  # high weight first
    RAND = "RAND"  # hashed hyperedge id


def transpose(hedge_offsets, hedge_pins, num_nodes: int):
    """Build the node -> hyperedge incidence from the hyperedge -> node one.

    Returns ``(node_offsets, node_hedges)`` with the hyperedge ids of every
    node strictly increasing.
    """
    hedge_offsets = np.asarray(hedge_offsets, dtype=np.int64)
    hedge_pins = np.asarray(hedge_pins, dtype=np.int64)
    if hedge_pins.size and (hedge_pins.min() < 0 or hedge_pins.max() >= num_nodes):
        bad = hedge_pins[(hedge_pins < 0) | (hedge_pins >= num_nodes)][0]
        raise MalformedInput(f"pin {int(bad)} out of range for {num_nodes} nodes")
    num_hedges = len(hedge_offsets) - 1
    incidence = sp.csr_matrix(
        (np.ones(hedge_pins.size, dtype=np.int8), hedge_pins, hedge_offsets),
        shape=(num_hedges, num_nodes),
    ).tocsc()
    return incidence.indptr.astype(np.int64), incidence.indices.astype(np.int64)


@dataclass(eq=False)
class Hypergraph:
    """Hypergraph stored as two CSR incidence structures plus integer weights.

    ``hedge_offsets``/``hedge_pins`` list the nodes of every hyperedge and
    ``node_offsets``/``node_hedges`` are the exact transpose. Build instances
    with :meth:`from_hedges` or :meth:`from_csr` rather than by hand.
    """

    num_nodes: int
    num_hedges: int
    hedge_offsets: np.ndarray
    hedge_pins: np.ndarray
    node_offsets: np.ndarray
    node_hedges: np.ndarray
    node_weight: np.ndarray
    hedge_weight: np.ndarray

    @classmethod
    def from_csr(cls, num_nodes, hedge_offsets, hedge_pins, node_weight=None, hedge_weight=None):
        """Assemble from already canonical hyperedge CSR (sorted, duplicate-free pins)."""
        hedge_offsets = np.ascontiguousarray(hedge_offsets, dtype=np.int64)
        hedge_pins = np.ascontiguousarray(hedge_pins, dtype=np.int64)
        num_hedges = len(hedge_offsets) - 1
        node_offsets, node_hedges = transpose(hedge_offsets, hedge_pins, num_nodes)
        if node_weight is None:
            node_weight = np.ones(num_nodes, dtype=np.int64)
        if hedge_weight is None:
            hedge_weight = np.ones(num_hedges, dtype=np.int64)
        return cls(
            num_nodes=int(num_nodes),
            num_hedges=num_hedges,
            hedge_offsets=hedge_offsets,
            hedge_pins=hedge_pins,
            node_offsets=node_offsets,
            node_hedges=node_hedges,
            node_weight=np.ascontiguousarray(node_weight, dtype=np.int64),
            hedge_weight=np.ascontiguousarray(hedge_weight, dtype=np.int64),
        )

    @classmethod
    def from_hedges(
        cls,
        num_nodes: int,
        hedges: Iterable[Iterable[int]],
        node_weight: Sequence[int] | None = None,
        hedge_weight: Sequence[int] | None = None,
    ) -> "Hypergraph":
        """Build from a list of pin lists. Duplicate pins are collapsed."""
        offsets = [0]
        pins: list[int] = []
        for members in hedges:
            uniq = sorted(set(int(v) for v in members))
            if not uniq:
                raise MalformedInput(f"hyperedge {len(offsets) - 1} is empty")
            pins.extend(uniq)
            offsets.append(len(pins))
        return cls.from_csr(num_nodes, offsets, pins, node_weight, hedge_weight)

    @cached_property
    def hedge_degree(self) -> np.ndarray:
        return np.diff(self.hedge_offsets)

    @cached_property
    def node_degree(self) -> np.ndarray:
        return np.diff(self.node_offsets)

    @cached_property
    def pin_hedge(self) -> np.ndarray:
        """Hyperedge id of every entry of ``hedge_pins``."""
        return np.repeat(np.arange(self.num_hedges, dtype=np.int64), self.hedge_degree)

    @cached_property
    def incidence_node(self) -> np.ndarray:
        """Node id of every entry of ``node_hedges``."""
        return np.repeat(np.arange(self.num_nodes, dtype=np.int64), self.node_degree)

    @cached_property
    def total_weight(self) -> int:
        return int(self.node_weight.sum())

    def pins(self, e: int) -> np.ndarray:
        return self.hedge_pins[self.hedge_offsets[e] : self.hedge_offsets[e + 1]]

    def incident(self, v: int) -> np.ndarray:
        return self.node_hedges[self.node_offsets[v] : self.node_offsets[v + 1]]

    def hedge_lists(self) -> list[list[int]]:
        return [self.pins(e).tolist() for e in range(self.num_hedges)]

    def same_as(self, other: "Hypergraph") -> bool:
        """Bit-level equality of every stored array."""
        return (
            self.num_nodes == other.num_nodes
            and self.num_hedges == other.num_hedges
            and all(
                np.array_equal(getattr(self, name), getattr(other, name))
                for name in (
                    "hedge_offsets",
                    "hedge_pins",
                    "node_offsets",
                    "node_hedges",
                    "node_weight",
                    "hedge_weight",
                )
            )
        )


def validate(h: Hypergraph) -> list[str]:
    """Return a description of every broken structural invariant (empty if none)."""
    problems: list[str] = []
    ho, hp = np.asarray(h.hedge_offsets), np.asarray(h.hedge_pins)
    no, nh = np.asarray(h.node_offsets), np.asarray(h.node_hedges)
    if len(ho) != h.num_hedges + 1 or len(no) != h.num_nodes + 1:
        return ["offset array length mismatch"]
    if ho[0] != 0 or no[0] != 0 or np.any(np.diff(ho) < 0) or np.any(np.diff(no) < 0):
        problems.append("offsets not monotone from 0")
        return problems
    if ho[-1] != len(hp) or no[-1] != len(nh) or len(hp) != len(nh):
        problems.append("pin count mismatch between the two incidence arrays")
        return problems
    if len(h.node_weight) != h.num_nodes or len(h.hedge_weight) != h.num_hedges:
        problems.append("weight array length mismatch")
    elif np.any(h.node_weight <= 0) or np.any(h.hedge_weight <= 0):
        problems.append("non-positive weight")
    if len(hp) and (hp.min() < 0 or hp.max() >= h.num_nodes):
        problems.append("pin node id out of range")
        return problems
    if len(nh) and (nh.min() < 0 or nh.max() >= h.num_hedges):
        problems.append("incident hyperedge id out of range")
        return problems
    for e in range(h.num_hedges):
        pins = hp[ho[e] : ho[e + 1]]
        if len(pins) == 0:
            problems.append(f"hyperedge {e} is empty")
        elif np.any(np.diff(pins) <= 0):
            problems.append(f"hyperedge {e} pins not strictly increasing")
    for v in range(h.num_nodes):
        if np.any(np.diff(nh[no[v] : no[v + 1]]) <= 0):
            problems.append(f"node {v} hyperedges not strictly increasing")
    forward = set(zip(np.repeat(np.arange(h.num_hedges), np.diff(ho)).tolist(), hp.tolist()))
    backward = set(zip(nh.tolist(), np.repeat(np.arange(h.num_nodes), np.diff(no)).tolist()))
    for e, v in sorted(forward - backward):
        problems.append(f"dual inconsistency at ({e},{v})")
    for e, v in sorted(backward - forward):
        problems.append(f"dual inconsistency at ({e},{v})")
    return problems


@dataclass
class Partition:
    """Part id per node plus the aggregate node weight of each part."""

    part: np.ndarray
    k: int
    part_weight: np.ndarray

    @classmethod
    def from_parts(cls, part, k: int, node_weight) -> "Partition":
        part = np.ascontiguousarray(part, dtype=np.int64)
        if part.size and (part.min() < 0 or part.max() >= k):
            raise ValueError(f"part id outside [0, {k})")
        weights = np.zeros(k, dtype=np.int64)
        np.add.at(weights, part, np.asarray(node_weight, dtype=np.int64))
        return cls(part=part, k=k, part_weight=weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return (
            self.k == other.k
            and np.array_equal(self.part, other.part)
            and np.array_equal(self.part_weight, other.part_weight)
        )


def as_fraction(value) -> Fraction:
    """Exact rational for an imbalance value given as str, int, float or Fraction.

    Floats go through their shortest decimal repr so ``0.1`` means 1/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Params:
    policy: Policy = Policy.LDH
    coarse_to: int = 25
    refine_iters: int = 2
    epsilon: Fraction = field(default=Fraction(1, 10))
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "policy", Policy(self.policy))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.coarse_to < 1:
            raise ValueError("coarse_to must be >= 1")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be >= 0")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.k < 1:
            raise ValueError("k must be >= 1")
