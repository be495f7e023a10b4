"""Deterministic multilevel hypergraph partitioning."""

from .coarsening import CoarseningLevel, MultilevelHierarchy, coarsen_chain, coarsen_once
from .core import Hypergraph, MalformedInput, Params, Partition, Policy, transpose, validate
from .hgr import parse_hgr, parse_partition, read_hgr, write_hgr, write_partition
from .initial import compute_gains, initial_partition
from .kway import RunStats, bipartition, kway_partition
from .matching import compute_matching, groups_of, splitmix64
from .metrics import cut, hedge_lambda, imbalance
from .refinement import project, rebalance, refine

__all__ = [
    "CoarseningLevel",
    "Hypergraph",
    "MalformedInput",
    "MultilevelHierarchy",
    "Params",
    "Partition",
    "Policy",
    "RunStats",
    "bipartition",
    "coarsen_chain",
    "coarsen_once",
    "compute_gains",
    "compute_matching",
    "cut",
    "groups_of",
    "hedge_lambda",
    "imbalance",
    "initial_partition",
    "kway_partition",
    "parse_hgr",
    "parse_partition",
    "project",
    "read_hgr",
    "rebalance",
    "refine",
    "splitmix64",
    "transpose",
    "validate",
    "write_hgr",
    "write_partition",
]
