"""Perfect matching subroutines: feasibility, red-extremal PMs, monochromatic completion.

Feasibility uses augmenting paths (Kuhn on bipartite inputs, Edmonds'
blossom shrinking otherwise). Red-extremal matchings are exact weighted
problems: a min-cost assignment on bipartite graphs, a weighted blossom
matching on general ones.
"""

from __future__ import annotations

from collections.abc import Iterable

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InputError
from .graph import Color, ColoredGraph, PerfectMatching, _color

__all__ = ["pm_exists", "perfect_matching_on", "extremal_red_pm", "complete_monochromatic"]


def _kuhn(left, adj, right_count) -> list[int] | None:
    """Perfect bipartite matching on local indices; ``None`` once a left vertex fails."""
    match_r = [-1] * right_count

    def try_kuhn(v, seen):
        for to in adj[v]:
            if seen[to]:
                continue
            seen[to] = True
            if match_r[to] == -1 or try_kuhn(match_r[to], seen):
                match_r[to] = v
                return True
        return False

    for v in range(left):
        if not try_kuhn(v, [False] * right_count):
            return None
    return match_r


def _edmonds(n, adj) -> list[int] | None:
    """Perfect matching on local vertices ``0..n-1`` via blossom shrinking.

    Returns the mate array or ``None``. An exposed vertex with no augmenting
    path stays exposed under later augmentations, so the first failure
    settles the question.
    """
    match = [-1] * n
    # greedy start
    for v in range(n):
        if match[v] == -1:
            for to in adj[v]:
                if match[to] == -1:
                    match[v], match[to] = to, v
                    break

    for root in range(n):
        if match[root] != -1:
            continue
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        q = [root]
        qh = 0
        found = -1

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = p[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = p[match[b]]

        def mark(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                p[v] = child
                child = match[v]
                v = p[match[v]]

        while qh < len(q) and found == -1:
            v = q[qh]
            qh += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        found = to
                        break
                    used[match[to]] = True
                    q.append(match[to])
        if found == -1:
            return None
        v = found
        while v != -1:
            pv = p[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv
    return match


def perfect_matching_on(g: ColoredGraph, vertices: Iterable[int], eids: Iterable[int]) -> list[int] | None:
    """Edge ids of a perfect matching of ``vertices`` using only ``eids``, or ``None``."""
    verts = sorted(vertices)
    if len(verts) % 2:
        return None
    if not verts:
        return []
    local = {v: i for i, v in enumerate(verts)}
    eids = [e for e in eids if g.edges[e][0] in local and g.edges[e][1] in local]
    if g.is_bipartite:
        lefts = [v for v in verts if g.side(v) == "A"]
        rights = [v for v in verts if g.side(v) == "B"]
        if len(lefts) != len(rights):
            return None
        li = {v: i for i, v in enumerate(lefts)}
        ri = {v: i for i, v in enumerate(rights)}
        adj = [[] for _ in lefts]
        by_pair = {}
        for e in sorted(eids):
            u, v = g.edges[e]
            a, b = (u, v) if u in li else (v, u)
            adj[li[a]].append(ri[b])
            by_pair[(li[a], ri[b])] = e
        mr = _kuhn(len(lefts), adj, len(rights))
        if mr is None:
            return None
        return sorted(by_pair[(mr[j], j)] for j in range(len(rights)))
    adj = [[] for _ in verts]
    by_pair = {}
    for e in sorted(eids):
        u, v = g.edges[e]
        a, b = local[u], local[v]
        adj[a].append(b)
        adj[b].append(a)
        by_pair[(min(a, b), max(a, b))] = e
    mate = _edmonds(len(verts), adj)
    if mate is None:
        return None
    return sorted(by_pair[(i, mate[i])] for i in range(len(verts)) if i < mate[i])


def pm_exists(g: ColoredGraph) -> bool:
    return perfect_matching_on(g, range(1, g.n + 1), range(g.m)) is not None


def extremal_red_pm(g: ColoredGraph, direction: str = "minimize") -> PerfectMatching | None:
    """A perfect matching with the fewest (``"minimize"``) or most (``"maximize"``) red edges."""
    if direction not in ("minimize", "maximize"):
        raise InputError(f"direction must be minimize or maximize, not {direction!r}")
    if g.n % 2:
        return None
    sign = 1 if direction == "minimize" else -1
    if g.is_bipartite:
        return _extremal_bipartite(g, sign)
    return _extremal_general(g, sign)


def _extremal_bipartite(g, sign):
    lefts = [v for v in range(1, g.n + 1) if g.side(v) == "A"]
    rights = [v for v in range(1, g.n + 1) if g.side(v) == "B"]
    if len(lefts) != len(rights):
        return None
    li = {v: i for i, v in enumerate(lefts)}
    ri = {v: i for i, v in enumerate(rights)}
    k = len(lefts)
    forbidden = 2 * k + 1  # costlier than any all-real assignment
    cost = np.full((k, k), forbidden, dtype=np.int64)
    eid = np.full((k, k), -1, dtype=np.int64)
    for e, (u, v) in enumerate(g.edges):
        a, b = (u, v) if u in li else (v, u)
        cost[li[a], ri[b]] = sign if g.colors[e] is Color.RED else 0
        eid[li[a], ri[b]] = e
    rows, cols = linear_sum_assignment(cost)
    chosen = eid[rows, cols]
    if (chosen < 0).any():
        return None
    return PerfectMatching(g, frozenset(int(e) for e in chosen))


def _extremal_general(g, sign):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    for e, (u, v) in enumerate(g.edges):
        red = g.colors[e] is Color.RED
        # maxcardinality first, then maximize weight: blue for minimize, red for maximize
        w = (0 if red else 1) if sign > 0 else (1 if red else 0)
        h.add_edge(u, v, weight=w, eid=e)
    mate = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(mate) != g.n:
        return None
    return PerfectMatching(g, frozenset(h[u][v]["eid"] for u, v in mate))


def complete_monochromatic(g: ColoredGraph, forced: Iterable, color) -> PerfectMatching | None:
    """Extend ``forced`` to a PM whose other edges all have ``color``."""
    color = _color(color)
    forced = [g.resolve(e) for e in forced]
    covered: set[int] = set()
    for e in forced:
        u, v = g.edges[e]
        if u in covered or v in covered:
            raise InputError(f"forced edges share a vertex at edge {u}-{v}")
        covered.update((u, v))
    rest = [v for v in range(1, g.n + 1) if v not in covered]
    mono = [e for e in range(g.m) if g.colors[e] is color
            and g.edges[e][0] not in covered and g.edges[e][1] not in covered]
    extra = perfect_matching_on(g, rest, mono)
    if extra is None:
        return None
    return PerfectMatching(g, frozenset(forced) | frozenset(extra))
