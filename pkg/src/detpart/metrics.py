"""Cut and balance of a partition, computed from scratch."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .core import Hypergraph, Partition, as_fraction


def hedge_lambda(h: Hypergraph, e: int, p: Partition) -> int:
    """Number of distinct parts touched by hyperedge ``e``."""
    return int(np.unique(p.part[h.pins(e)]).size)


def lambdas(h: Hypergraph, part: np.ndarray) -> np.ndarray:
    """Connectivity of every hyperedge at once."""
    if h.num_hedges == 0:
        return np.zeros(0, dtype=np.int64)
    k = int(part.max()) + 1 if part.size else 1
    key = h.pin_hedge * k + part[h.hedge_pins]
    uniq = np.unique(key)
    return np.bincount(uniq // k, minlength=h.num_hedges)


def cut(h: Hypergraph, p: Partition | np.ndarray) -> int:
    """Sum over hyperedges of weight * (connectivity - 1)."""
    part = p.part if isinstance(p, Partition) else np.asarray(p, dtype=np.int64)
    return int(np.dot(h.hedge_weight, lambdas(h, part) - 1))


def part_cap(total_weight: int, k: int, epsilon) -> int:
    """Largest integer part weight allowed by ``w <= (1 + eps) * W / k``."""
    bound = (1 + as_fraction(epsilon)) * total_weight / k
    return math.floor(bound)


@dataclass(frozen=True)
class Imbalance:
    max_part_weight: int
    total_weight: int
    k: int
    bounds: dict[Fraction, Fraction]
    balanced: dict[Fraction, bool]


def imbalance(p: Partition, epsilons: Iterable = (Fraction(1, 10),)) -> Imbalance:
    total = int(p.part_weight.sum())
    heaviest = int(p.part_weight.max()) if p.k else 0
    bounds, ok = {}, {}
    for eps in epsilons:
        eps = as_fraction(eps)
        bounds[eps] = (1 + eps) * Fraction(total, p.k)
        ok[eps] = heaviest <= bounds[eps]
    return Imbalance(heaviest, total, p.k, bounds, ok)


def is_balanced(p: Partition, epsilon) -> bool:
    eps = as_fraction(epsilon)
    return imbalance(p, [eps]).balanced[eps]
