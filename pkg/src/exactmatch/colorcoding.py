"""Color coding for a nearby PM with a prescribed red count.

Looks for vertex-disjoint ``M``-alternating cycles with at most ``L`` edges
in total whose ``w_M`` weights add up to ``target_delta``. Only matching
edges are colored: two alternating cycles share a vertex iff they share a
matching edge, so "colorful on matching edges" already forces vertex
disjointness, and ``L`` edges contain at most ``q = L // 2`` matching edges.
A trial colors the matching edges with ``q`` colors and runs

1. a DP growing single cycles from their lowest-colored matching edge,
   with states (current vertex, color set, weight), and
2. a DP over color sets that glues cycles with disjoint color sets.

A fixed solution is colorful with probability at least ``q!/q^q``.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from .errors import InputError
from .graph import Color, ColoredGraph, PerfectMatching, cycles_from_edges, toggle

__all__ = ["trial_count", "color_coding_search"]

FAILURE_EXPONENT = 20  # per-instance failure probability at most 2^-20
DETERMINISTIC_MAX_L = 4


def trial_count(L: int, exponent: int = FAILURE_EXPONENT) -> int:
    """Trials so that a colorful coloring is missed with probability <= 2^-exponent."""
    q = max(1, L // 2)
    p = math.factorial(q) / q**q
    if p >= 1:
        return 1
    return math.ceil(exponent / math.log2(1 / (1 - p)))


def _single_cycles(g, m, mate_edge, color, q):
    """Map (color mask, weight) -> list of cycle edge ids, one witness each."""
    found: dict[tuple[int, int], list[int]] = {}
    medges = sorted(m.edges)
    red = [c is Color.RED for c in g.colors]
    for s in medges:
        a, b = g.edges[s]
        cs = color[s]
        start_key = (b, 1 << cs, -1 if red[s] else 0)
        back = {start_key: None}
        layer = [start_key]
        while layer:
            nxt = []
            for key in layer:
                x, mask, w = key
                for y, e in g.neighbors(x):
                    if e in m.edges:
                        continue
                    we = 1 if red[e] else 0
                    if y == a:
                        if mask != 1 << cs and (mask, w + we) not in found:
                            found[(mask, w + we)] = _rebuild(g, back, key, e, s)
                        continue
                    f = mate_edge[y]
                    cf = color[f]
                    if cf <= cs or mask >> cf & 1:
                        continue
                    z = g.other_end(f, y)
                    nk = (z, mask | 1 << cf, w + we + (-1 if red[f] else 0))
                    if nk not in back:
                        back[nk] = (key, e, f)
                        nxt.append(nk)
            layer = nxt
    return found


def _rebuild(g, back, key, closing, start):
    edges = [closing, start]
    while back[key] is not None:
        key, e, f = back[key]
        edges.extend((e, f))
    return edges


def _combine(single, q, target):
    """Disjoint union of cycles with total weight ``target``: list of keys or None."""
    by_mask: dict[int, list[tuple[int, int]]] = {}
    for mask, w in single:
        by_mask.setdefault(mask, []).append((mask, w))
    table: list[dict[int, list]] = [dict() for _ in range(1 << q)]
    table[0][0] = []
    for mask in range(1, 1 << q):
        low = mask & -mask
        cell = table[mask]
        sub = mask
        while sub:
            if sub & low and sub in by_mask:
                rest = table[mask ^ sub]
                for key in by_mask[sub]:
                    for w, parts in rest.items():
                        total = w + key[1]
                        if total not in cell:
                            cell[total] = parts + [key]
            sub = (sub - 1) & mask
        if target in cell:
            return cell[target]
    return None


def color_coding_search(g: ColoredGraph, m: PerfectMatching, L: int, target_delta: int,
                        trials: int | None = None, seed: int = 0, deterministic: bool = False,
                        stats: dict | None = None) -> PerfectMatching | None:
    """A PM with ``r = r(m) + target_delta`` within ``L`` edges of ``m``, or ``None``.

    ``deterministic=True`` (only for ``L <= 4``) tries every coloring.
    """
    if L < 1:
        raise InputError("L must be at least 1")
    if target_delta == 0:
        return m
    if L < 4:
        return None
    q = L // 2
    medges = sorted(m.edges)
    mate_edge = [-1] * (g.n + 1)
    for e in medges:
        u, v = g.edges[e]
        mate_edge[u] = mate_edge[v] = e
    if deterministic:
        if L > DETERMINISTIC_MAX_L:
            raise InputError(f"deterministic color coding is limited to L <= {DETERMINISTIC_MAX_L}")
        colorings = (dict(zip(medges, cols)) for cols in product(range(q), repeat=len(medges)))
    else:
        trials = trial_count(L) if trials is None else trials
        rng = np.random.Generator(np.random.PCG64(seed))
        colorings = (dict(zip(medges, rng.integers(0, q, size=len(medges)).tolist())) for _ in range(trials))
    used = 0
    for color in colorings:
        used += 1
        single = _single_cycles(g, m, mate_edge, color, q)
        parts = _combine(single, q, target_delta)
        if parts is not None:
            edges = set()
            for key in parts:
                edges.update(single[key])
            out = toggle(m, cycles_from_edges(g, edges))
            if stats is not None:
                stats["trials"] = used
            return out
    if stats is not None:
        stats["trials"] = used
    return None
