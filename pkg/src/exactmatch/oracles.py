"""Brute-force reference implementations.

Everything here is exhaustive and deliberately simple; caps abort with
:class:`BudgetExceeded` rather than silently truncating.
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache
from itertools import combinations

from .errors import BudgetExceeded, InputError
from .graph import ColoredGraph, PerfectMatching
from .mocp import DirectedCycle, WeightedDigraph

__all__ = [
    "ENUM_CAP",
    "enumerate_pms",
    "count_pms",
    "brute_decide",
    "brute_mocp",
    "simple_cycles",
    "brute_independence",
]

ENUM_CAP = 16
MOCP_CAP = 12
INDEPENDENCE_CAP = 20


def _check_cap(n, cap, what):
    if n > cap:
        raise BudgetExceeded(f"{what}: n = {n} exceeds the enumeration cap {cap}")


def enumerate_pms(g: ColoredGraph, cap: int = ENUM_CAP) -> Iterator[PerfectMatching]:
    """Every perfect matching once; the lowest uncovered vertex is matched first."""
    _check_cap(g.n, cap, "enumerate_pms")
    if g.n % 2:
        return
    mate = [0] * (g.n + 1)
    chosen: list[int] = []

    def rec(v):
        while v <= g.n and mate[v]:
            v += 1
        if v > g.n:
            yield PerfectMatching(g, frozenset(chosen))
            return
        for u, e in g.neighbors(v):
            if mate[u]:
                continue
            mate[u], mate[v] = v, u
            chosen.append(e)
            yield from rec(v + 1)
            chosen.pop()
            mate[u] = mate[v] = 0

    yield from rec(1)


def count_pms(g: ColoredGraph) -> int:
    """Number of perfect matchings by a memoized recursion over vertex subsets."""
    nbr = [0] * (g.n + 1)
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    @lru_cache(maxsize=None)
    def count(mask):
        if not mask:
            return 1
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        total = 0
        cand = nbr[low] & rest
        while cand:
            bit = cand & -cand
            total += count(rest & ~bit)
            cand ^= bit
        return total

    full = sum(1 << v for v in range(1, g.n + 1))
    return count(full)


def brute_decide(problem: str, g: ColoredGraph, k: int, cap: int = ENUM_CAP) -> PerfectMatching | None:
    """Scan all PMs for a witness of the EM / BCPM / CPM box at ``k``."""
    if problem == "em":
        ok = lambda r: r == k  # noqa: E731
    elif problem == "bcpm":
        ok = lambda r: r <= k and (r - k) % 2 == 0  # noqa: E731
    elif problem == "cpm":
        ok = lambda r: (r - k) % 2 == 0  # noqa: E731
    else:
        raise InputError(f"unknown problem {problem!r}")
    for m in enumerate_pms(g, cap):
        if ok(m.red):
            return m
    return None


def simple_cycles(d: WeightedDigraph, cap: int = MOCP_CAP) -> Iterator[DirectedCycle]:
    """All simple directed cycles, each once, rooted at their lowest vertex.

    Parallel arcs yield distinct cycles.
    """
    _check_cap(d.n, cap, "simple_cycles")
    out = d.out_arcs()
    for s in range(1, d.n + 1):
        path_v = [s]
        path_a: list[int] = []
        on_path = {s}

        def dfs(x):
            for a in out[x]:
                y = d.arcs[a][1]
                if y == s:
                    yield DirectedCycle(tuple(path_v), (*path_a, a))
                elif y > s and y not in on_path:
                    path_v.append(y)
                    path_a.append(a)
                    on_path.add(y)
                    yield from dfs(y)
                    on_path.discard(y)
                    path_a.pop()
                    path_v.pop()

        yield from dfs(s)


def brute_mocp(d: WeightedDigraph, w=None, cap: int = MOCP_CAP) -> DirectedCycle | None:
    w = d.weights if w is None else tuple(w)
    best, best_w = None, None
    for c in simple_cycles(d, cap):
        cw = c.weight(w)
        if cw % 2 and (best_w is None or cw < best_w):
            best, best_w = c, cw
    return best


def brute_independence(g: ColoredGraph, mode: str = "alpha", cap: int = INDEPENDENCE_CAP) -> int:
    """Independence number (``alpha``) or balanced bipartite independence number (``beta``).

    ``beta`` is the largest ``s`` such that some ``s`` vertices of side A and
    ``s`` vertices of side B span no edge.
    """
    _check_cap(g.n, cap, "brute_independence")
    nbr = [0] * (g.n + 1)
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    if mode == "alpha":
        best = 0

        def grow(cand, size):
            nonlocal best
            best = max(best, size)
            if size + bin(cand).count("1") <= best:
                return
            while cand:
                bit = cand & -cand
                v = bit.bit_length() - 1
                cand ^= bit
                grow(cand & ~nbr[v], size + 1)

        grow(sum(1 << v for v in range(1, g.n + 1)), 0)
        return best
    if mode == "beta":
        if not g.is_bipartite:
            raise InputError("beta needs a bipartite graph")
        side_a = [v for v in range(1, g.n + 1) if g.side(v) == "A"]
        side_b_mask = sum(1 << v for v in range(1, g.n + 1) if g.side(v) == "B")
        best = 0
        for size in range(1, len(side_a) + 1):
            for sub in combinations(side_a, size):
                blocked = 0
                for v in sub:
                    blocked |= nbr[v]
                free = bin(side_b_mask & ~blocked).count("1")
                best = max(best, min(size, free))
        return best
    raise InputError(f"mode must be alpha or beta, not {mode!r}")

