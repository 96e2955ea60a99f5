"""Colored graphs, perfect matchings and alternating cycles.

Vertices are the integers ``1..n``; every edge gets a stable integer id
(its index in ``ColoredGraph.edges``) so matchings, cycles and F2 vectors
can all be expressed as sets of edge ids.

The weight of an edge relative to a perfect matching ``M`` is

* ``0`` for a blue edge,
* ``+1`` for a red edge not in ``M``,
* ``-1`` for a red edge in ``M``,

so that for any two perfect matchings ``r(M2) = r(M) + w_M(M ^ M2)``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum

from .errors import InputError

__all__ = [
    "Color",
    "ColoredGraph",
    "PerfectMatching",
    "AlternatingCycle",
    "AlternatingCycleSet",
    "edge_weight",
    "weight_sum",
    "red_count",
    "sym_diff_cycles",
    "cycles_from_edges",
    "toggle",
    "cycle_path",
]


class Color(str, Enum):
    RED = "r"
    BLUE = "b"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


def _color(c) -> Color:
    if isinstance(c, Color):
        return c
    try:
        return Color(str(c).lower()[:1])
    except ValueError:
        raise InputError(f"unknown color {c!r}") from None


@dataclass(frozen=True)
class ColoredGraph:
    """A simple graph whose edges are colored red or blue.

    ``sides`` is an optional bipartition: ``sides[v - 1]`` is ``"A"`` or
    ``"B"``. Construct with :meth:`from_edges` unless the edge tuples are
    already normalized.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[Color, ...]
    sides: tuple[str, ...] | None = None
    _index: dict = field(init=False, repr=False, compare=False)
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a graph needs at least one vertex")
        if len(self.edges) != len(self.colors):
            raise InputError("edges and colors differ in length")
        index = {}
        adj = [[] for _ in range(self.n + 1)]
        for eid, (u, v) in enumerate(self.edges):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InputError(f"edge {u}-{v} has an endpoint outside 1..{self.n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u > v:
                raise InputError(f"edge {u}-{v} is not normalized (u < v)")
            if (u, v) in index:
                raise InputError(f"parallel edge {u}-{v}")
            index[(u, v)] = eid
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        if self.sides is not None:
            if len(self.sides) != self.n or set(self.sides) - {"A", "B"}:
                raise InputError("sides must assign 'A' or 'B' to every vertex")
            for u, v in self.edges:
                if self.sides[u - 1] == self.sides[v - 1]:
                    raise InputError(f"edge {u}-{v} lies inside side {self.sides[u - 1]}")
        for lst in adj:
            lst.sort()
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

    @classmethod
    def from_edges(cls, n, edges, n_a=None, sides=None) -> "ColoredGraph":
        """Build from ``(u, v, color)`` triples; ``n_a`` puts ``1..n_a`` on side A."""
        norm, cols = [], []
        for u, v, c in edges:
            u, v = int(u), int(v)
            norm.append((u, v) if u < v else (v, u))
            cols.append(_color(c))
        if n_a is not None:
            if not 0 <= n_a <= n:
                raise InputError(f"side A size {n_a} outside 0..{n}")
            sides = tuple("A" if v <= n_a else "B" for v in range(1, n + 1))
        return cls(n, tuple(norm), tuple(cols), None if sides is None else tuple(sides))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_bipartite(self) -> bool:
        return self.sides is not None

    def side(self, v: int) -> str:
        if self.sides is None:
            raise InputError("graph has no bipartition")
        return self.sides[v - 1]

    def find_edge(self, u: int, v: int) -> int | None:
        return self._index.get((u, v) if u < v else (v, u))

    def edge_id(self, u: int, v: int) -> int:
        eid = self.find_edge(u, v)
        if eid is None:
            raise InputError(f"no edge {u}-{v}")
        return eid

    def resolve(self, e) -> int:
        """Accept an edge id or a ``(u, v)`` pair and return the edge id."""
        if isinstance(e, tuple):
            return self.edge_id(*e)
        e = int(e)
        if not 0 <= e < self.m:
            raise InputError(f"unknown edge id {e}")
        return e

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(neighbor, edge_id)`` pairs sorted by neighbor."""
        return self._adj[v]

    def is_red(self, eid: int) -> bool:
        return self.colors[eid] is Color.RED

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a

    def swap_colors(self) -> "ColoredGraph":
        return ColoredGraph(self.n, self.edges, tuple(c.other for c in self.colors), self.sides)

    def subgraph(self, keep: Iterable[int]) -> tuple["ColoredGraph", list[int]]:
        """Spanning subgraph on the given edge ids plus the new-id -> old-id map."""
        keep = sorted(set(keep))
        g = ColoredGraph(self.n, tuple(self.edges[e] for e in keep),
                         tuple(self.colors[e] for e in keep), self.sides)
        return g, keep

    def edges_of_color(self, color: Color) -> list[int]:
        color = _color(color)
        return [e for e, c in enumerate(self.colors) if c is color]


@dataclass(frozen=True, eq=False)
class PerfectMatching:
    """An edge set of ``graph`` covering every vertex exactly once."""

    graph: ColoredGraph = field(repr=False)
    edges: frozenset[int]
    mate: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        g = self.graph
        edges = frozenset(int(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        mate = [0] * (g.n + 1)
        for e in edges:
            if not 0 <= e < g.m:
                raise InputError(f"unknown edge id {e}")
            u, v = g.edges[e]
            if mate[u] or mate[v]:
                raise InputError(f"edges overlap at edge {u}-{v}")
            mate[u], mate[v] = v, u
        missing = [v for v in range(1, g.n + 1) if not mate[v]]
        if missing:
            raise InputError(f"not perfect: vertices {missing[:5]} uncovered")
        object.__setattr__(self, "mate", tuple(mate))

    @classmethod
    def from_pairs(cls, g: ColoredGraph, pairs) -> "PerfectMatching":
        return cls(g, frozenset(g.edge_id(u, v) for u, v in pairs))

    def __eq__(self, other):
        if not isinstance(other, PerfectMatching):
            return NotImplemented
        return self.edges == other.edges and self.graph.edges == other.graph.edges

    def __hash__(self):
        return hash(self.edges)

    def __contains__(self, eid) -> bool:
        return eid in self.edges

    @property
    def red(self) -> int:
        """r(M): the number of red matching edges."""
        g = self.graph
        return sum(1 for e in self.edges if g.colors[e] is Color.RED)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.graph.edges[e] for e in self.edges)


def edge_weight(g: ColoredGraph, m: PerfectMatching, e) -> int:
    eid = g.resolve(e)
    if g.colors[eid] is Color.BLUE:
        return 0
    return -1 if eid in m.edges else 1


def weight_sum(g: ColoredGraph, m: PerfectMatching, edge_set) -> int:
    total = 0
    for e in edge_set:
        eid = g.resolve(e)
        if g.colors[eid] is Color.RED:
            total += -1 if eid in m.edges else 1
    return total


def red_count(g: ColoredGraph, edge_set) -> int:
    """r(.) of an edge set."""
    return sum(1 for e in edge_set if g.colors[g.resolve(e)] is Color.RED)


@dataclass(frozen=True)
class AlternatingCycle:
    """A simple cycle stored in a fixed orientation.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[(i + 1) % len]``. The
    canonical orientation starts at the lowest vertex and heads toward its
    lower cycle neighbor.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self):
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def position(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise InputError(f"vertex {v} is not on the cycle") from None

    def weight(self, g: ColoredGraph, m: PerfectMatching) -> int:
        return weight_sum(g, m, self.edges)

    def is_alternating(self, m: PerfectMatching) -> bool:
        k = len(self.edges)
        if k % 2:
            return False
        return all((self.edges[i] in m.edges) != (self.edges[(i + 1) % k] in m.edges)
                   for i in range(k))


def _walk_cycle(g: ColoredGraph, inc: dict, start: int) -> AlternatingCycle:
    (a, ea), (b, eb) = sorted(inc[start])
    verts, eids = [start], [ea]
    prev, cur = start, a
    while cur != start:
        verts.append(cur)
        (x, ex), (y, ey) = inc[cur]
        nxt, e = (y, ey) if ex == eids[-1] else (x, ex)
        eids.append(e)
        prev, cur = cur, nxt
    return AlternatingCycle(tuple(verts), tuple(eids))


def cycles_from_edges(g: ColoredGraph, eids) -> list[AlternatingCycle]:
    """Split an edge set in which every vertex has degree 0 or 2 into cycles.

    Cycles come out in canonical orientation, ordered by lowest vertex.
    """
    inc: dict[int, list] = {}
    for e in eids:
        u, v = g.edges[e]
        inc.setdefault(u, []).append((v, e))
        inc.setdefault(v, []).append((u, e))
    bad = [v for v, lst in inc.items() if len(lst) != 2]
    if bad:
        raise InputError(f"edge set is not a union of cycles (vertex {min(bad)})")
    seen: set[int] = set()
    out = []
    for v in sorted(inc):
        if v in seen:
            continue
        c = _walk_cycle(g, inc, v)
        seen.update(c.vertices)
        out.append(c)
    return out


@dataclass(frozen=True)
class AlternatingCycleSet:
    """Vertex-disjoint cycles alternating w.r.t. ``base`` (typically ``base ^ other``).

    ``weights`` caches ``w_base`` for each cycle.
    """

    base: PerfectMatching = field(repr=False)
    cycles: tuple[AlternatingCycle, ...]
    weights: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        g = self.base.graph
        seen: set[int] = set()
        for c in self.cycles:
            if not c.is_alternating(self.base):
                raise InputError(f"cycle through {c.vertices[0]} is not alternating")
            if seen.intersection(c.vertices):
                raise InputError("cycles are not vertex-disjoint")
            seen.update(c.vertices)
        object.__setattr__(self, "weights", tuple(c.weight(g, self.base) for c in self.cycles))

    @classmethod
    def from_edges(cls, base: PerfectMatching, eids) -> "AlternatingCycleSet":
        return cls(base, tuple(cycles_from_edges(base.graph, eids)))

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    @property
    def weight(self) -> int:
        return sum(self.weights)

    @property
    def size(self) -> int:
        """Total edge count ``|E(C)|``."""
        return sum(len(c) for c in self.cycles)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(e for c in self.cycles for e in c.edges)

    def other(self) -> PerfectMatching:
        """The matching ``base ^ cycles``."""
        return PerfectMatching(self.base.graph, self.base.edges ^ self.edge_set)

    def cycle_of(self, v: int) -> int | None:
        for i, c in enumerate(self.cycles):
            if v in c.vertices:
                return i
        return None


def sym_diff_cycles(g: ColoredGraph, m: PerfectMatching, m2: PerfectMatching) -> AlternatingCycleSet:
    """Decompose ``m ^ m2`` into ``m``-alternating cycles."""
    for x in (m, m2):
        if not isinstance(x, PerfectMatching) or x.graph.edges != g.edges:
            raise InputError("both arguments must be perfect matchings of g")
    return AlternatingCycleSet.from_edges(m, m.edges ^ m2.edges)


def toggle(m: PerfectMatching, cycles) -> PerfectMatching:
    """Return ``m ^ cycles`` for one cycle or a collection of vertex-disjoint cycles."""
    if isinstance(cycles, AlternatingCycle):
        cycles = (cycles,)
    elif isinstance(cycles, AlternatingCycleSet):
        if cycles.base != m:
            cycles = tuple(cycles.cycles)
        else:
            return cycles.other()
    cycles = tuple(cycles)
    # constructing the set validates alternation and disjointness
    cs = AlternatingCycleSet(m, cycles)
    return cs.other()


def cycle_path(c: AlternatingCycle, u: int, v: int) -> tuple[int, ...]:
    """Edge ids of ``C[u, v]``: the walk from ``u`` to ``v`` in the cycle's orientation."""
    i, j = c.position(u), c.position(v)
    k = len(c.edges)
    steps = (j - i) % k
    return tuple(c.edges[(i + s) % k] for s in range(steps))
