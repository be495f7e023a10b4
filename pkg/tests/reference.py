"""Straight-line serial versions of every phase, written with plain lists.

These deliberately share no code with the package: they walk hyperedges in
ascending id order exactly like the textbook loops and serve as oracles.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

MASK64 = (1 << 64) - 1
INF = MASK64
MAXKEY = MASK64 - 1


def splitmix64(x):
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def priority(policy, e, hedges, hedge_weight):
    if policy == "LDH":
        return len(hedges[e])
    if policy == "HDH":
        return MAXKEY - len(hedges[e])
    if policy == "LWD":
        return hedge_weight[e]
    if policy == "HWD":
        return MAXKEY - hedge_weight[e]
    return splitmix64(e)


def matching(n, hedges, hedge_weight, policy):
    node_pri = [INF] * n
    node_rand = [INF] * n
    node_hedge = [INF] * n
    hpri = [priority(policy, e, hedges, hedge_weight) for e in range(len(hedges))]
    hrand = [splitmix64(e) for e in range(len(hedges))]
    for e, pins in enumerate(hedges):
        for v in pins:
            node_pri[v] = min(node_pri[v], hpri[e])
    for e, pins in enumerate(hedges):
        for v in pins:
            if hpri[e] == node_pri[v]:
                node_rand[v] = min(node_rand[v], hrand[e])
    for e, pins in enumerate(hedges):
        for v in pins:
            if hrand[e] == node_rand[v]:
                node_hedge[v] = min(node_hedge[v], e)
    return node_pri, node_rand, node_hedge


def coarsen_once(n, hedges, node_weight, hedge_weight, policy):
    """Returns (parent, coarse_hedges, hedge_parent, coarse_node_weight, coarse_hedge_weight)."""
    _, _, match = matching(n, hedges, hedge_weight, policy)
    members = {}
    for v in range(n):
        if match[v] != INF:
            members.setdefault(match[v], []).append(v)

    parent = [None] * n
    group_weight = {}
    next_id = 0
    for e in range(len(hedges)):
        s = members.get(e, [])
        if len(s) > 1:
            for v in s:
                parent[v] = next_id
            group_weight[next_id] = sum(node_weight[v] for v in s)
            next_id += 1

    merged = [p is not None for p in parent]
    for e in range(len(hedges)):
        s = members.get(e, [])
        if len(s) == 1:
            u = s[0]
            options = [(group_weight[parent[w]], parent[w]) for w in hedges[e] if merged[w]]
            if options:
                parent[u] = min(options)[1]

    for v in range(n):
        if parent[v] is None:
            parent[v] = next_id
            next_id += 1

    coarse_weight = [0] * next_id
    for v in range(n):
        coarse_weight[parent[v]] += node_weight[v]

    coarse_hedges, coarse_hw, hedge_parent = [], [], []
    for e, pins in enumerate(hedges):
        parents = sorted({parent[v] for v in pins})
        if len(parents) > 1:
            hedge_parent.append(len(coarse_hedges))
            coarse_hedges.append(parents)
            coarse_hw.append(hedge_weight[e])
        else:
            hedge_parent.append(-1)
    return parent, coarse_hedges, hedge_parent, coarse_weight, coarse_hw


def cut(hedges, hedge_weight, part):
    return sum(w * (len({part[v] for v in pins}) - 1) for pins, w in zip(hedges, hedge_weight))


def gains(n, hedges, hedge_weight, part):
    """Move gains by counting side occupancy per hyperedge."""
    g = [0] * n
    for e, pins in enumerate(hedges):
        if len(pins) < 2:
            continue
        count = [0, 0]
        for v in pins:
            count[part[v]] += 1
        for u in pins:
            i = part[u]
            if count[i] == 1:
                g[u] += hedge_weight[e]
            elif count[i] == len(pins):
                g[u] -= hedge_weight[e]
    return g


def flip_gains(n, hedges, hedge_weight, part):
    """Brute force: recount the whole cut after flipping each node."""
    base = cut(hedges, hedge_weight, part)
    out = []
    for u in range(n):
        flipped = list(part)
        flipped[u] = 1 - flipped[u]
        out.append(base - cut(hedges, hedge_weight, flipped))
    return out


def _ranked(nodes, g):
    return sorted(nodes, key=lambda v: (-g[v], v))


def initial_partition(n, hedges, node_weight, hedge_weight, parts=(1, 1)):
    part = [1] * n
    w0, w1 = 0, sum(node_weight)
    batch = math.ceil(math.sqrt(n)) if n else 1
    a, b = parts
    while b * w0 < a * w1:
        g = gains(n, hedges, hedge_weight, part)
        for v in _ranked([v for v in range(n) if part[v] == 1], g)[:batch]:
            part[v] = 0
            w0 += node_weight[v]
            w1 -= node_weight[v]
    return part


def refine(n, hedges, hedge_weight, part, iters):
    part = list(part)
    for _ in range(iters):
        g = gains(n, hedges, hedge_weight, part)
        left = _ranked([v for v in range(n) if part[v] == 0 and g[v] >= 0], g)
        right = _ranked([v for v in range(n) if part[v] == 1 and g[v] >= 0], g)
        lmin = min(len(left), len(right))
        if lmin == 0:
            break
        for v in left[:lmin]:
            part[v] = 1
        for v in right[:lmin]:
            part[v] = 0
    return part


def rebalance(n, hedges, node_weight, hedge_weight, part, epsilon, parts=(1, 1), cap=None):
    total = sum(node_weight)
    if cap is None:
        cap = math.floor((1 + Fraction(epsilon)) * total / (parts[0] + parts[1]))
    bound = [parts[0] * cap, parts[1] * cap]
    part = list(part)
    weight = [0, 0]
    for v in range(n):
        weight[part[v]] += node_weight[v]
    batch = math.ceil(math.sqrt(n)) if n else 1
    while True:
        if weight[0] > bound[0]:
            heavy = 0
        elif weight[1] > bound[1]:
            heavy = 1
        else:
            return part, True
        light = 1 - heavy
        g = gains(n, hedges, hedge_weight, part)
        cand = _ranked(
            [v for v in range(n) if part[v] == heavy and node_weight[v] <= bound[light] - weight[light]], g
        )
        moved = 0
        for v in cand[:batch]:
            if weight[light] + node_weight[v] > bound[light]:
                continue
            part[v] = light
            weight[heavy] -= node_weight[v]
            weight[light] += node_weight[v]
            moved += 1
            if weight[heavy] <= bound[heavy]:
                break
        if moved == 0:
            return part, False


def best_bisection_cut(n, hedges, hedge_weight, node_weight, epsilon):
    """Exhaustive minimum cut over all balanced bipartitions (tiny n only)."""
    total = sum(node_weight)
    cap = (1 + Fraction(epsilon)) * Fraction(total, 2)
    best = None
    for size in range(n + 1):
        for side0 in combinations(range(n), size):
            part = [1] * n
            for v in side0:
                part[v] = 0
            w0 = sum(node_weight[v] for v in side0)
            if w0 > cap or total - w0 > cap:
                continue
            c = cut(hedges, hedge_weight, part)
            best = c if best is None else min(best, c)
    return best
