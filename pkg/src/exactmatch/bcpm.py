"""Bounded correct parity matching: r(M) <= k and r(M) = k (mod 2).

On bipartite graphs the problem is polynomial. Start from a red-minimum
perfect matching ``M0``. Orient matching edges A -> B and the rest B -> A;
directed cycles are then exactly the ``M0``-alternating cycles, and with
arc weights ``w0 = w_M0`` a cycle's weight is the change in red count when
it is toggled. If ``r(M0)`` has the wrong parity, the cheapest fix is a
minimum odd-weight directed cycle, found after shifting the weights to be
non-negative with vertex potentials.
"""

from __future__ import annotations

import logging

from .errors import InputError, NegativeCycleError
from .graph import ColoredGraph, PerfectMatching, edge_weight, toggle, cycles_from_edges
from .matching import extremal_red_pm
from .mocp import WeightedDigraph, solve_mocp
from .oracles import ENUM_CAP, brute_decide

__all__ = ["orient_by_matching", "reweight_nonnegative", "solve_bcpm_bipartite", "solve_bcpm_bruteforce"]

log = logging.getLogger(__name__)


def orient_by_matching(g: ColoredGraph, m0: PerfectMatching) -> tuple[WeightedDigraph, tuple[int, ...]]:
    """Digraph with arc id = edge id: matching edges A -> B, others B -> A."""
    if not g.is_bipartite:
        raise InputError("orient_by_matching needs a bipartite graph")
    arcs = []
    for e, (u, v) in enumerate(g.edges):
        a, b = (u, v) if g.side(u) == "A" else (v, u)
        arcs.append((a, b) if e in m0.edges else (b, a))
    w0 = tuple(edge_weight(g, m0, e) for e in range(g.m))
    return WeightedDigraph(g.n, tuple(arcs), w0), w0


def reweight_nonnegative(d: WeightedDigraph, w0) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Potentials ``p`` from a zero-weight virtual source and ``w0(u,v) + p(u) - p(v)``.

    Returns ``(weights, p)`` with ``p`` indexed by vertex (``p[0]`` unused).
    Raises :class:`NegativeCycleError` if some directed cycle is negative.
    """
    w0 = tuple(int(x) for x in w0)
    if len(w0) != len(d.arcs):
        raise InputError("weight vector does not match the arc count")
    p = [0] * (d.n + 1)
    for _ in range(d.n):
        changed = False
        for a, (x, y) in enumerate(d.arcs):
            if p[x] + w0[a] < p[y]:
                p[y] = p[x] + w0[a]
                changed = True
        if not changed:
            break
    else:
        for a, (x, y) in enumerate(d.arcs):
            if p[x] + w0[a] < p[y]:
                raise NegativeCycleError("negative directed cycle: the start matching is not red-minimum")
    w = tuple(w0[a] + p[x] - p[y] for a, (x, y) in enumerate(d.arcs))
    return w, tuple(p)


def solve_bcpm_bipartite(g: ColoredGraph, k: int) -> PerfectMatching | None:
    """A PM with ``r <= k`` and ``r = k (mod 2)`` on a bipartite graph, or ``None``."""
    if not g.is_bipartite:
        raise InputError("solve_bcpm_bipartite needs a bipartite graph")
    if k < 0:
        raise InputError(f"k = {k} is negative")
    if 2 * k > g.n:
        log.warning("k = %d exceeds n/2 = %d; clamping", k, g.n // 2)
        k = g.n // 2
    m0 = extremal_red_pm(g, "minimize")
    if m0 is None:
        return None
    r0 = m0.red
    if r0 > k:
        return None
    if (r0 - k) % 2 == 0:
        return m0
    d, w0 = orient_by_matching(g, m0)
    w, _ = reweight_nonnegative(d, w0)
    cyc = solve_mocp(d, w)
    if cyc is None or cyc.weight(w0) > k - r0:
        return None
    return toggle(m0, cycles_from_edges(g, cyc.arcs))


def solve_bcpm_bruteforce(g: ColoredGraph, k: int, cap: int = ENUM_CAP) -> PerfectMatching | None:
    """BCPM by enumeration; works on any graph up to ``cap`` vertices."""
    if k < 0:
        raise InputError(f"k = {k} is negative")
    return brute_decide("bcpm", g, k, cap)
