"""Minimum odd-weight directed cycle in a non-negatively weighted digraph.

For every odd arc ``e = (u, v)`` the cheapest closed walk using ``e`` exactly
once is ``e`` plus a cheapest even-weight ``v -> u`` walk in ``D - e``. That
walk is a shortest path in the parity-layered digraph on ``V x {0, 1}``:
even arcs stay in their layer, odd arcs switch layers. The best closed walk
over all odd arcs is then shortcut to a simple odd cycle that is no heavier.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import InputError

__all__ = [
    "WeightedDigraph",
    "Walk",
    "DirectedCycle",
    "extract_odd_cycle",
    "min_odd_closed_walk_through",
    "solve_mocp",
]

WEIGHT_LIMIT = 2**31


@dataclass(frozen=True)
class WeightedDigraph:
    """Digraph on vertices ``1..n``; arc ``i`` is ``arcs[i] = (tail, head)``.

    Parallel arcs are allowed and told apart by id.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        if self.weights and len(self.weights) != len(self.arcs):
            raise InputError("one weight per arc required")
        for a, (x, y) in enumerate(self.arcs):
            if not (1 <= x <= self.n and 1 <= y <= self.n):
                raise InputError(f"arc {a} = {x}->{y} leaves 1..{self.n}")
        for wt in self.weights:
            if int(wt) != wt:
                raise InputError("arc weights must be integers")

    @classmethod
    def from_arcs(cls, n, arcs) -> "WeightedDigraph":
        """Build from ``(tail, head, weight)`` triples."""
        arcs = list(arcs)
        return cls(n, tuple((int(x), int(y)) for x, y, _ in arcs), tuple(int(wt) for _, _, wt in arcs))

    def out_arcs(self) -> list[list[int]]:
        out = [[] for _ in range(self.n + 1)]
        for a, (x, _) in enumerate(self.arcs):
            out[x].append(a)
        return out


def _weights(d: WeightedDigraph, w) -> tuple[int, ...]:
    w = d.weights if w is None else tuple(int(x) for x in w)
    if len(w) != len(d.arcs):
        raise InputError("weight vector does not match the arc count")
    return w


def _check_nonneg(w):
    for x in w:
        if x < 0:
            raise InputError(f"negative arc weight {x}")
        if x >= WEIGHT_LIMIT:
            raise InputError(f"arc weight {x} exceeds 2^31")


@dataclass(frozen=True)
class Walk:
    """``vertices[i] -> vertices[i + 1]`` along ``arcs[i]``; repetitions allowed."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.arcs) + 1:
            raise InputError("a walk has one more vertex than arcs")

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def weight(self, w) -> int:
        return sum(w[a] for a in self.arcs)

    def check(self, d: WeightedDigraph):
        for i, a in enumerate(self.arcs):
            if d.arcs[a] != (self.vertices[i], self.vertices[i + 1]):
                raise InputError(f"arc {a} does not join {self.vertices[i]} -> {self.vertices[i + 1]}")


@dataclass(frozen=True)
class DirectedCycle:
    """A simple directed cycle: ``arcs[i]`` leaves ``vertices[i]``."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    def weight(self, w) -> int:
        return sum(w[a] for a in self.arcs)

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices) == len(self.arcs)

    def check(self, d: WeightedDigraph):
        k = len(self.vertices)
        for i, a in enumerate(self.arcs):
            if d.arcs[a] != (self.vertices[i], self.vertices[(i + 1) % k]):
                raise InputError(f"arc {a} breaks the cycle")


def extract_odd_cycle(d: WeightedDigraph, w, z: Walk) -> DirectedCycle:
    """Shortcut an odd closed walk to a simple odd cycle of no larger weight.

    Scans the walk once, keeping the repetition-free prefix on a stack. At
    the first repeated vertex the closed sub-walk between the two visits is
    simple; it is returned if odd, otherwise cut out and the scan resumes.
    Linear in the walk length.
    """
    w = _weights(d, w)
    _check_nonneg(w)
    z.check(d)
    if not z.closed or not z.arcs:
        raise InputError("walk is not closed")
    if z.weight(w) % 2 == 0:
        raise InputError("walk weight is even")
    stack_v: list[int] = []
    stack_a: list[int] = []
    pos: dict[int, int] = {}
    for v, a in zip(z.vertices[:-1], z.arcs):
        if v in pos:
            start = pos[v]
            loop_w = sum(w[x] for x in stack_a[start:])
            if loop_w % 2:
                return DirectedCycle(tuple(stack_v[start:]), tuple(stack_a[start:]))
            for u in stack_v[start:]:
                del pos[u]
            del stack_v[start:]
            del stack_a[start:]
        pos[v] = len(stack_v)
        stack_v.append(v)
        stack_a.append(a)
    return DirectedCycle(tuple(stack_v), tuple(stack_a))


def _layered_shortest(d, w, out, skip_arc, src, dst):
    """Shortest even-weight ``src -> dst`` walk avoiding ``skip_arc``: (dist, arcs) or None."""
    start, goal = 2 * src, 2 * dst
    dist = {start: 0}
    pred: dict[int, tuple[int, int]] = {}
    heap = [(0, start)]
    done = set()
    while heap:
        du, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if node == goal:
            break
        x, par = divmod(node, 2)
        for a in out[x]:
            if a == skip_arc:
                continue
            y = d.arcs[a][1]
            nxt = 2 * y + (par ^ (w[a] & 1))
            nd = du + w[a]
            if nd < dist.get(nxt, nd + 1):
                dist[nxt] = nd
                pred[nxt] = (node, a)
                heapq.heappush(heap, (nd, nxt))
    if goal not in done:
        return None
    arcs = []
    node = goal
    while node != start:
        node, a = pred[node]
        arcs.append(a)
    arcs.reverse()
    return dist[goal], arcs


def min_odd_closed_walk_through(d: WeightedDigraph, w, e: int, _out=None) -> Walk | None:
    """Cheapest odd closed walk that uses arc ``e`` exactly once (``e`` must be odd)."""
    w = _weights(d, w)
    _check_nonneg(w)
    if w[e] % 2 == 0:
        raise InputError(f"arc {e} has even weight")
    u, v = d.arcs[e]
    out = _out if _out is not None else d.out_arcs()
    res = _layered_shortest(d, w, out, e, v, u)
    if res is None:
        return None
    _, arcs = res
    verts = [u, v]
    for a in arcs:
        verts.append(d.arcs[a][1])
    return Walk(tuple(verts), (e, *arcs))


def solve_mocp(d: WeightedDigraph, w=None) -> DirectedCycle | None:
    """Minimum odd-weight directed cycle, or ``None`` if every cycle is even."""
    w = _weights(d, w)
    _check_nonneg(w)
    out = d.out_arcs()
    best: Walk | None = None
    best_w = None
    for e in range(len(d.arcs)):
        if w[e] % 2 == 0:
            continue
        z = min_odd_closed_walk_through(d, w, e, _out=out)
        if z is None:
            continue
        zw = z.weight(w)
        if best_w is None or zw < best_w:
            best, best_w = z, zw
    if best is None:
        return None
    return extract_odd_cycle(d, w, best)
