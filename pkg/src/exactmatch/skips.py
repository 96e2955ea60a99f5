"""Skips, biskips and zero-weight skip/cycle sets on alternating cycles.

A *skip* on an ``M``-alternating cycle ``C`` is a pair of crossing chords
``e1 = (v1, v2)``, ``e2 = (v1', v2')`` (endpoints in the order
``v1, v1', v2, v2'`` along ``C``) such that replacing the arcs
``C[v1, v1']`` and ``C[v2, v2']`` by the chords leaves a strictly shorter
alternating cycle ``C'``; its weight is ``w(C') - w(C)`` and must lie in
``[-4, 4]``. A *biskip* (bipartite graphs) instead uses one or two nested
chords and splits ``C`` into up to two disjoint alternating cycles.

Everything is relative to the base matching ``M`` of an
:class:`AlternatingCycleSet` ``M ^ M_other``. Using a skip rewrites
``M_other`` so that ``r(M_other)`` moves by exactly the skip's weight.

Vertex types used by the enumerators: walking the cycle in its fixed
orientation, a vertex is *M-out* if the edge leaving it is a matching edge
and *N-out* otherwise. Skip chords join two N-out or two M-out vertices,
biskip chords join an N-out vertex to an M-out one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InputError
from .graph import (
    AlternatingCycle,
    AlternatingCycleSet,
    Color,
    ColoredGraph,
    PerfectMatching,
    _color,
    cycle_path,
    cycles_from_edges,
    weight_sum,
)

__all__ = [
    "Skip",
    "Biskip",
    "SkipCycleSet",
    "CyclePath",
    "PairScan",
    "SearchBudget",
    "enumerate_skips",
    "check_skip",
    "check_biskip",
    "use_skip",
    "use_skip_cycle_set",
    "find_signed_skips",
    "find_zero_skip_cycle_set",
    "find_small_weight_cycle",
    "find_long_mono_path",
    "scan_pairs_bundles",
]

MAX_SKIP_WEIGHT = 4
SUBSET_SKIP_CAP = 8
SUBSET_CYCLE_CAP = 8


@dataclass(frozen=True)
class Skip:
    """Two crossing chords; ``anchors = (v1, v1', v2, v2')`` in cycle order."""

    chords: tuple[int, ...]
    anchors: tuple[int, ...]
    removed: frozenset[int] = field(repr=False)
    span: frozenset[int] = field(repr=False)
    weight: int

    kind = "skip"

    def disjoint(self, other: "Skip") -> bool:
        return not (self.span & other.span)


@dataclass(frozen=True)
class Biskip(Skip):
    """One chord ``anchors = (v1, v2)`` or two nested chords ``(v1, v2', v1', v2)``."""

    kind = "biskip"


@dataclass(frozen=True)
class SkipCycleSet:
    """Disjoint skips plus whole cycles; weight is skip weights minus cycle weights."""

    skips: tuple[Skip, ...]
    cycles: tuple[AlternatingCycle, ...]
    weight: int

    def __len__(self):
        return len(self.skips) + len(self.cycles)


@dataclass(frozen=True)
class CyclePath:
    """The subpath of ``cycle`` with ``length`` edges starting at position ``start``."""

    cycle: AlternatingCycle
    start: int
    length: int

    def __post_init__(self):
        if not 0 < self.length <= len(self.cycle):
            raise InputError(f"path length {self.length} outside 1..{len(self.cycle)}")

    @property
    def edges(self) -> tuple[int, ...]:
        k = len(self.cycle)
        return tuple(self.cycle.edges[(self.start + i) % k] for i in range(self.length))

    @property
    def vertices(self) -> tuple[int, ...]:
        k = len(self.cycle)
        return tuple(self.cycle.vertices[(self.start + i) % k] for i in range(self.length + 1))

    @classmethod
    def whole(cls, cycle: AlternatingCycle) -> "CyclePath":
        return cls(cycle, 0, len(cycle))


@dataclass(frozen=True)
class PairScan:
    """Consecutive (matching, non-matching) edge pairs along a path.

    Pair ``i`` covers path edges ``offset + 2i`` and ``offset + 2i + 1``.
    ``bundles[s]`` is a maximum family of disjoint ``s``-bundles given as
    pair-index ranges; ``saps`` are maximal pair ranges without a bundle.
    """

    offset: int
    pairs: tuple[int, ...]
    bundles: dict = field(default_factory=dict)
    saps: tuple[tuple[int, int], ...] = ()

    def edge_range(self, i: int, j: int) -> tuple[int, int]:
        """Path edge range ``[lo, hi)`` covered by pairs ``i..j``."""
        return self.offset + 2 * i, self.offset + 2 * j + 2


@dataclass
class SearchBudget:
    """Node counter shared by the bounded searches; ``exhausted`` is sticky."""

    limit: int = 200_000
    used: int = 0
    exhausted: bool = False

    def spend(self, k: int = 1) -> bool:
        self.used += k
        if self.used > self.limit:
            self.exhausted = True
        return not self.exhausted


class _CycleInfo:
    """Position arithmetic on one cycle relative to the base matching."""

    def __init__(self, g: ColoredGraph, m: PerfectMatching, c: AlternatingCycle):
        self.g, self.m, self.c = g, m, c
        self.L = L = len(c)
        self.pos = {v: i for i, v in enumerate(c.vertices)}
        self.mout = [e in m.edges for e in c.edges]
        ew = [(-1 if e in m.edges else 1) if g.colors[e] is Color.RED else 0 for e in c.edges]
        pw = [0] * (L + 1)
        for i, x in enumerate(ew):
            pw[i + 1] = pw[i] + x
        self.pw = pw
        cyc = set(c.edges)
        self.chords = []
        for i, v in enumerate(c.vertices):
            for u, e in g.neighbors(v):
                j = self.pos.get(u)
                if j is not None and j > i and e not in cyc:
                    self.chords.append((i, j, e))
        self.chords.sort(key=lambda t: t[2])

    def fwd(self, a, b):
        return (b - a) % self.L

    def path_weight(self, a, b):
        """Weight of the forward arc from position ``a`` to position ``b``."""
        if b >= a:
            return self.pw[b] - self.pw[a]
        return self.pw[self.L] - self.pw[a] + self.pw[b]

    def arc_edges(self, a, b):
        return frozenset(self.c.edges[(a + s) % self.L] for s in range(self.fwd(a, b)))

    def arc_vertices(self, a, b):
        return frozenset(self.c.vertices[(a + s) % self.L] for s in range(self.fwd(a, b) + 1))

    def chord_weight(self, e):
        return 1 if self.g.colors[e] is Color.RED else 0

    def skips(self) -> list[Skip]:
        nn = [ch for ch in self.chords if not self.mout[ch[0]] and not self.mout[ch[1]]]
        mm = [ch for ch in self.chords if self.mout[ch[0]] and self.mout[ch[1]]]
        V = self.c.vertices
        out = []
        for a, b, e1 in nn:
            for c_, d_, e2 in mm:
                for p1, p2 in ((a, b), (b, a)):
                    r2 = self.fwd(p1, p2)
                    rc, rd = self.fwd(p1, c_), self.fwd(p1, d_)
                    if (rc < r2) == (rd < r2):
                        continue  # not crossing
                    q1, q2 = (c_, d_) if rc < r2 else (d_, c_)
                    l1, l2 = self.fwd(p1, q1), self.fwd(p2, q2)
                    if l1 + l2 <= 2:
                        continue
                    w = (self.chord_weight(e1) + self.chord_weight(e2)
                         - self.path_weight(p1, q1) - self.path_weight(p2, q2))
                    if abs(w) > MAX_SKIP_WEIGHT:
                        continue
                    out.append(Skip(
                        chords=(e1, e2),
                        anchors=(V[p1], V[q1], V[p2], V[q2]),
                        removed=self.arc_edges(p1, q1) | self.arc_edges(p2, q2),
                        span=self.arc_vertices(p1, q2),
                        weight=w,
                    ))
        return out

    def biskips(self) -> list[Biskip]:
        nm = []
        for i, j, e in self.chords:
            if self.mout[i] != self.mout[j]:
                x, y = (j, i) if self.mout[i] else (i, j)  # x is N-out, y is M-out
                nm.append((x, y, e))
        V = self.c.vertices
        out = []
        for x, y, e in nm:
            length = self.fwd(x, y)
            if length <= 1:
                continue
            w = self.chord_weight(e) - self.path_weight(x, y)
            if abs(w) <= MAX_SKIP_WEIGHT:
                out.append(Biskip(chords=(e,), anchors=(V[x], V[y]),
                                  removed=self.arc_edges(x, y), span=self.arc_vertices(x, y), weight=w))
        for x1, y1, e1 in nm:
            r_y1 = self.fwd(x1, y1)
            for x2, y2, e2 in nm:
                if e2 == e1:
                    continue
                r_y2, r_x2 = self.fwd(x1, y2), self.fwd(x1, x2)
                if not (0 < r_y2 < r_x2 < r_y1):
                    continue
                l1, l2 = r_y2, r_y1 - r_x2
                if l1 + l2 <= 2:
                    continue
                w = (self.chord_weight(e1) + self.chord_weight(e2)
                     - self.path_weight(x1, y2) - self.path_weight(x2, y1))
                if abs(w) > MAX_SKIP_WEIGHT:
                    continue
                out.append(Biskip(chords=(e1, e2), anchors=(V[x1], V[y2], V[x2], V[y1]),
                                  removed=self.arc_edges(x1, y2) | self.arc_edges(x2, y1),
                                  span=self.arc_vertices(x1, y1), weight=w))
        return out


def _sort_key(s: Skip):
    return (s.chords, s.anchors)


def enumerate_skips(g: ColoredGraph, m: PerfectMatching, c: AlternatingCycle, mode: str = "alpha") -> list[Skip]:
    """All skips (``alpha``) or biskips (``beta``) of ``c``, ordered by chord ids."""
    if not c.is_alternating(m):
        raise InputError("cycle is not alternating for the given matching")
    info = _CycleInfo(g, m, c)
    if mode == "alpha":
        found = info.skips()
    elif mode == "beta":
        if not g.is_bipartite:
            raise InputError("biskips need a bipartite graph")
        found = info.biskips()
    else:
        raise InputError(f"mode must be alpha or beta, not {mode!r}")
    return sorted(found, key=_sort_key)


# ---------------------------------------------------------------------------
# definition checkers: build the replacement explicitly from cycle paths


def _order_ok(c: AlternatingCycle, seq) -> bool:
    if len(set(seq)) != len(seq):
        return False
    p0 = c.position(seq[0])
    rel = [(c.position(v) - p0) % len(c) for v in seq]
    return all(a < b for a, b in zip(rel, rel[1:]))


def _chords_ok(g, m, c, chords, pairs) -> bool:
    for e, (u, v) in zip(chords, pairs):
        if g.find_edge(u, v) != e or e in c.edge_set or e in m.edges:
            return False
    return True


def _replacement(g, m, c, chords, removed):
    new = (c.edge_set - frozenset(removed)) | frozenset(chords)
    if len(new) != len(c.edges) - len(set(removed)) + len(chords):
        return None
    try:
        cycles = cycles_from_edges(g, new)
    except InputError:
        return None
    if not all(x.is_alternating(m) for x in cycles):
        return None
    return cycles


def check_skip(g, m, c, chords, anchors) -> int | None:
    """Weight of the skip if ``(chords, anchors)`` satisfies the definition, else ``None``."""
    if len(chords) != 2 or len(anchors) != 4:
        return None
    v1, v1p, v2, v2p = anchors
    if not all(v in c.vertices for v in anchors) or not _order_ok(c, anchors):
        return None
    if not _chords_ok(g, m, c, chords, [(v1, v2), (v1p, v2p)]):
        return None
    removed = set(cycle_path(c, v1, v1p)) | set(cycle_path(c, v2, v2p))
    cycles = _replacement(g, m, c, chords, removed)
    if cycles is None or len(cycles) != 1 or len(cycles[0]) >= len(c):
        return None
    w = cycles[0].weight(g, m) - c.weight(g, m)
    return w if abs(w) <= MAX_SKIP_WEIGHT else None


def check_biskip(g, m, c, chords, anchors) -> int | None:
    """Weight of the biskip if it satisfies the definition, else ``None``."""
    if not all(v in c.vertices for v in anchors) or not _order_ok(c, anchors):
        return None
    if len(chords) == 1 and len(anchors) == 2:
        v1, v2 = anchors
        if not _chords_ok(g, m, c, chords, [(v1, v2)]):
            return None
        keep = [set(cycle_path(c, v2, v1)) | {chords[0]}]
    elif len(chords) == 2 and len(anchors) == 4:
        v1, v2p, v1p, v2 = anchors
        if not _chords_ok(g, m, c, chords, [(v1, v2), (v1p, v2p)]):
            return None
        keep = [set(cycle_path(c, v2, v1)) | {chords[0]}, set(cycle_path(c, v2p, v1p)) | {chords[1]}]
    else:
        return None
    parts = []
    for edges in keep:
        try:
            cs = cycles_from_edges(g, edges)
        except InputError:
            return None
        if len(cs) != 1 or not cs[0].is_alternating(m):
            return None
        parts.append(cs[0])
    if len(parts) == 2 and set(parts[0].vertices) & set(parts[1].vertices):
        return None
    if sum(len(p) for p in parts) >= len(c):
        return None
    w = sum(p.weight(g, m) for p in parts) - c.weight(g, m)
    return w if abs(w) <= MAX_SKIP_WEIGHT else None


# ---------------------------------------------------------------------------
# using skips


def _host_index(cycles: AlternatingCycleSet, s: Skip) -> int:
    idx = cycles.cycle_of(s.anchors[0])
    if idx is None:
        raise InputError("stale skip: its anchor is not on any cycle")
    return idx


def _apply_one(cycles: AlternatingCycleSet, s: Skip) -> list[AlternatingCycle]:
    """Cycle list with the host of ``s`` replaced; raises if ``s`` is stale."""
    g, m = cycles.base.graph, cycles.base
    idx = _host_index(cycles, s)
    host = cycles.cycles[idx]
    if not s.removed <= host.edge_set or not set(s.anchors) <= set(host.vertices):
        raise InputError("stale skip: host cycle changed")
    new = _replacement(g, m, host, s.chords, s.removed)
    expected = 1 if s.kind == "skip" else len(s.chords)
    if new is None or len(new) != expected:
        raise InputError("stale skip: replacement is not alternating")
    if sum(len(x) for x in new) >= len(host):
        raise InputError("stale skip: replacement does not shrink the cycle")
    w = sum(x.weight(g, m) for x in new) - cycles.weights[idx]
    if w != s.weight:
        raise InputError(f"stale skip: weight {w} != recorded {s.weight}")
    out = list(cycles.cycles)
    out[idx:idx + 1] = new
    return out


def _finish(base, cycle_list, m_other, delta, size_before):
    new_set = AlternatingCycleSet(base, tuple(sorted(cycle_list, key=lambda c: c.vertices[0])))
    new_other = new_set.other()
    if new_other.red != m_other.red + delta:
        raise AssertionError("red-count shift does not match the weight")  # pragma: no cover
    if new_set.size >= size_before:
        raise AssertionError("symmetric difference did not shrink")  # pragma: no cover
    return new_set, new_other


def _check_pair(m_other, cycles):
    if cycles.base.edges ^ cycles.edge_set != m_other.edges:
        raise InputError("cycle set is not base ^ m_other")


def use_skip(m_other: PerfectMatching, cycles: AlternatingCycleSet, s: Skip):
    """Replace the host cycle of ``s``; returns ``(new cycle set, new m_other)``."""
    _check_pair(m_other, cycles)
    return _finish(cycles.base, _apply_one(cycles, s), m_other, s.weight, cycles.size)


def use_skip_cycle_set(m_other: PerfectMatching, cycles: AlternatingCycleSet, zset: SkipCycleSet):
    """Use every skip of ``zset`` and drop its cycles from the symmetric difference."""
    _check_pair(m_other, cycles)
    if not len(zset):
        raise InputError("empty skip-cycle set")
    base = cycles.base
    drop = set()
    for c in zset.cycles:
        if c not in cycles.cycles:
            raise InputError("skip-cycle set names a cycle that is not present")
        drop.add(c)
    if len(drop) != len(zset.cycles):
        raise InputError("a cycle is listed twice")
    for a, b in combinations(zset.skips, 2):
        if not a.disjoint(b):
            raise InputError("skips overlap")
    dropped_vertices = {v for c in drop for v in c.vertices}
    for s in zset.skips:
        if dropped_vertices & s.span:
            raise InputError("a skip sits on a removed cycle")
    current = AlternatingCycleSet(base, tuple(c for c in cycles.cycles if c not in drop))
    for s in zset.skips:
        current = AlternatingCycleSet(base, tuple(_apply_one(current, s)))
    expected = sum(s.weight for s in zset.skips) - sum(c.weight(base.graph, base) for c in zset.cycles)
    if expected != zset.weight:
        raise InputError(f"skip-cycle set weight {zset.weight} != recomputed {expected}")
    return _finish(base, list(current.cycles), m_other, zset.weight, cycles.size)


# ---------------------------------------------------------------------------
# pairs, bundles and signed skips along a path


def scan_pairs_bundles(g: ColoredGraph, m: PerfectMatching, path: CyclePath) -> PairScan:
    """Classify ``path`` into (matching, non-matching) pairs, bundles and SAPs.

    A leading non-matching edge is skipped so that pairs start at a matching edge.
    """
    edges = path.edges
    flags = [e in m.edges for e in edges]
    if any(a == b for a, b in zip(flags, flags[1:])):
        raise InputError("path is not alternating")
    offset = 0 if flags[0] else 1
    pairs = []
    for i in range(offset, len(edges) - 1, 2):
        pairs.append(weight_sum(g, m, edges[i:i + 2]))
    nonzero = [i for i, x in enumerate(pairs) if x]
    bundles = {}
    for sign in (1, -1):
        chosen, last = [], -1
        for a, b in zip(nonzero, nonzero[1:]):
            if pairs[a] == sign and pairs[b] == sign and a > last:
                chosen.append((a, b))
                last = b
        bundles[sign] = tuple(chosen)
    saps = []
    lo = 0
    for a, b in zip(nonzero, nonzero[1:]):
        if pairs[a] == pairs[b]:
            saps.append((lo, b - 1))
            lo = a + 1
    if pairs:
        saps.append((lo, len(pairs) - 1))
    return PairScan(offset, tuple(pairs), bundles, tuple(saps))


def _contained(path: CyclePath, s: Skip, lo: int = 0, hi: int | None = None) -> bool:
    """Is the span of ``s`` inside path positions ``[lo, hi]``?"""
    c = path.cycle
    k = len(c)
    hi = path.length if hi is None else hi
    first, last = s.anchors[0], s.anchors[-1]
    start = (c.position(first) - path.start) % k
    span_len = (c.position(last) - c.position(first)) % k
    return lo <= start and start + span_len <= hi and start + span_len <= path.length


def _max_disjoint(path: CyclePath, cands: list[Skip]) -> list[Skip]:
    """Earliest-end greedy: a maximum family of pairwise disjoint spans."""
    c = path.cycle
    k = len(c)

    def end(s):
        return ((c.position(s.anchors[0]) - path.start) % k
                + (c.position(s.anchors[-1]) - c.position(s.anchors[0])) % k)

    chosen: list[Skip] = []
    for s in sorted(cands, key=lambda s: (end(s), _sort_key(s))):
        if all(s.disjoint(x) for x in chosen):
            chosen.append(s)
    return chosen


def find_signed_skips(g: ColoredGraph, m: PerfectMatching, path: CyclePath, t: int, sign: str,
                      threshold_scale: int = 4, mode: str = "alpha") -> list[Skip]:
    """Up to ``t`` pairwise disjoint negative/positive skips contained in ``path``.

    Requires ``w(path) >= 2 t s`` for negative skips (``<= -2 t s`` for
    positive ones) with ``s = threshold_scale``; returns ``[]`` otherwise.
    Bundle groups are searched first (each group of ``s`` consecutive
    same-sign bundles hides a skip when the graph's independence parameter
    matches ``s``); if that yields fewer than ``t`` skips, every skip in the
    path is considered and a maximum disjoint family is taken.
    """
    if sign not in ("negative", "positive"):
        raise InputError("sign must be negative or positive")
    if t <= 0:
        return []
    w = weight_sum(g, m, path.edges)
    need = 2 * t * threshold_scale
    if (sign == "negative" and w < need) or (sign == "positive" and w > -need):
        return []
    want = (lambda x: x < 0) if sign == "negative" else (lambda x: x > 0)
    cands = [s for s in enumerate_skips(g, m, path.cycle, mode) if want(s.weight) and _contained(path, s)]
    if not cands:
        return []

    scan = scan_pairs_bundles(g, m, path)
    bundle_sign = 1 if sign == "negative" else -1
    bundles = scan.bundles[bundle_sign]
    guided: list[Skip] = []
    step = max(1, threshold_scale)
    for gi in range(0, len(bundles) - step + 1, step):
        group = bundles[gi:gi + step]
        lo, _ = scan.edge_range(group[0][0], group[0][0])
        _, hi = scan.edge_range(group[-1][1], group[-1][1])
        lo, hi = max(0, lo - 1), min(path.length, hi + 1)
        inside = [s for s in cands if _contained(path, s, lo, hi) and all(s.disjoint(x) for x in guided)]
        if inside:
            guided.append(inside[0])
        if len(guided) >= t:
            return guided[:t]
    return _max_disjoint(path, cands)[:t]


# ---------------------------------------------------------------------------
# zero-weight skip/cycle sets


def _all_skips(g, m, cycles, mode):
    return [enumerate_skips(g, m, c, mode) for c in cycles.cycles]


def _disjoint_family(per_cycle, weight_ok, exclude=()):
    fam = []
    for ci, skips in enumerate(per_cycle):
        if ci in exclude:
            continue
        for s in sorted((s for s in skips if weight_ok(s.weight)), key=lambda s: (len(s.span), _sort_key(s))):
            if all(s.disjoint(x) for x in fam):
                fam.append(s)
    return fam


def _zero_subset(skips, budget):
    """Smallest-first search for a non-empty zero-weight subset of disjoint skips."""
    for r in range(1, len(skips) + 1):
        for sub in combinations(skips, r):
            if not budget.spend():
                return None
            if sum(s.weight for s in sub) == 0 and all(a.disjoint(b) for a, b in combinations(sub, 2)):
                return sub
    return None


def find_zero_skip_cycle_set(g: ColoredGraph, m: PerfectMatching, cycles: AlternatingCycleSet, t: int | None = None,
                             budget: SearchBudget | None = None, mode: str = "alpha") -> SkipCycleSet | None:
    """A weight-0 set of disjoint skips and whole cycles, or ``None``.

    Stages, cheapest first: (1) a weight-0 cycle; (2) a single 0-skip;
    (3) cancelling pairs and the multiset patterns of the existence proofs
    (``|c|`` skips of weight ``s`` against ``|s|`` cycles of weight ``c``,
    ``w2`` cycles of weight ``w1`` against ``w1`` of weight ``-w2``, four
    disjoint positive plus four negative skips); (4) a bounded search over
    subsets of at most 8 skips and 8 cycles. Check ``budget.exhausted`` to
    tell a cut-off search from an empty one. ``t`` is accepted for the
    lemma thresholds; no stage depends on it for soundness.
    """
    budget = budget if budget is not None else SearchBudget()
    if cycles.base != m:
        raise InputError("cycles must be built on m")
    cw = cycles.weights
    # (1)
    for c, w in zip(cycles.cycles, cw):
        if w == 0:
            return SkipCycleSet((), (c,), 0)
    per_cycle = _all_skips(g, m, cycles, mode)
    flat = [(ci, s) for ci, lst in enumerate(per_cycle) for s in lst]
    # (2)
    for _, s in flat:
        if s.weight == 0:
            return SkipCycleSet((s,), (), 0)
    # (3a) opposite skips
    for (ci, a), (cj, b) in combinations(flat, 2):
        if not budget.spend():
            return None
        if a.weight + b.weight == 0 and a.disjoint(b):
            return SkipCycleSet((a, b), (), 0)
    # (3b) opposite cycles, (3c) skip against a cycle of equal weight
    for i, j in combinations(range(len(cw)), 2):
        if cw[i] + cw[j] == 0:
            return SkipCycleSet((), (cycles.cycles[i], cycles.cycles[j]), 0)
    for ci, s in flat:
        for j, w in enumerate(cw):
            if j != ci and w == s.weight:
                return SkipCycleSet((s,), (cycles.cycles[j],), 0)
    # (3d) w1 cycles of weight c against |c| disjoint skips of weight s, sign(s) == sign(c)
    by_weight: dict[int, list[int]] = {}
    for i, w in enumerate(cw):
        by_weight.setdefault(w, []).append(i)
    for s_w in sorted({s.weight for _, s in flat}, key=lambda x: (abs(x), x)):
        for c_w, idxs in sorted(by_weight.items(), key=lambda kv: (abs(kv[0]), kv[0])):
            if (s_w > 0) != (c_w > 0) or len(idxs) < abs(s_w):
                continue
            use_c = idxs[:abs(s_w)]
            fam = _disjoint_family(per_cycle, lambda x, s_w=s_w: x == s_w, exclude=set(use_c))
            if len(fam) >= abs(c_w):
                return SkipCycleSet(tuple(fam[:abs(c_w)]), tuple(cycles.cycles[i] for i in use_c), 0)
    # (3e) w2 cycles of weight w1 > 0 against w1 cycles of weight -w2 < 0
    for w1 in sorted(w for w in by_weight if w > 0):
        for w2 in sorted(-w for w in by_weight if w < 0):
            if len(by_weight[w1]) >= w2 and len(by_weight[-w2]) >= w1:
                pick = by_weight[w1][:w2] + by_weight[-w2][:w1]
                return SkipCycleSet((), tuple(cycles.cycles[i] for i in sorted(pick)), 0)
    # (3f) four disjoint positive and four disjoint negative skips contain a 0-skip set
    pos = _disjoint_family(per_cycle, lambda x: x > 0)
    neg = [s for s in _disjoint_family(per_cycle, lambda x: x < 0) if all(s.disjoint(p) for p in pos)]
    if len(pos) >= 4 and len(neg) >= 4:
        sub = _zero_subset(pos[:4] + neg[:4], budget)
        if sub is not None:
            return SkipCycleSet(tuple(sorted(sub, key=_sort_key)), (), 0)
    if budget.exhausted:
        return None
    # (4)
    return _bounded_search(cycles, flat, budget)


def _bounded_search(cycles, flat, budget):
    items = [("c", i, -w) for i, w in enumerate(cycles.weights) if w != 0]
    items += [("s", ci, s.weight, s) for ci, s in flat if s.weight != 0]
    contrib = [it[2] for it in items]
    suf_pos = [0] * (len(items) + 1)
    suf_neg = [0] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        suf_pos[i] = suf_pos[i + 1] + max(contrib[i], 0)
        suf_neg[i] = suf_neg[i + 1] + min(contrib[i], 0)
    chosen: list = []
    removed: set[int] = set()

    def dfs(i, total, n_s, n_c):
        if chosen and total == 0:
            return True
        if i == len(items) or not budget.spend():
            return False
        if total + suf_pos[i] < 0 or total + suf_neg[i] > 0:
            return False
        it = items[i]
        ok = False
        if it[0] == "c":
            ci = it[1]
            if n_c < SUBSET_CYCLE_CAP and not any(x[0] == "s" and x[1] == ci for x in chosen):
                ok = True
        else:
            ci, s = it[1], it[3]
            if (n_s < SUBSET_SKIP_CAP and ci not in removed
                    and all(x[0] != "s" or x[3].disjoint(s) for x in chosen)):
                ok = True
        if ok:
            chosen.append(it)
            if it[0] == "c":
                removed.add(it[1])
            if dfs(i + 1, total + it[2], n_s + (it[0] == "s"), n_c + (it[0] == "c")):
                return True
            chosen.pop()
            if it[0] == "c":
                removed.discard(it[1])
        return dfs(i + 1, total, n_s, n_c)

    if not dfs(0, 0, 0, 0):
        return None
    skips = tuple(sorted((x[3] for x in chosen if x[0] == "s"), key=_sort_key))
    cyc = tuple(cycles.cycles[x[1]] for x in chosen if x[0] == "c")
    return SkipCycleSet(skips, cyc, 0)


# ---------------------------------------------------------------------------
# monochromatic paths and small chord cycles


def find_long_mono_path(g: ColoredGraph, m: PerfectMatching, cycles: AlternatingCycleSet, t: int, color) -> CyclePath | None:
    """Longest run of ``color`` edges along the cycles if it has at least ``t`` edges."""
    color = _color(color)
    best = None
    for c in cycles.cycles:
        k = len(c)
        good = [g.colors[e] is color for e in c.edges]
        if all(good):
            cand = CyclePath(c, 0, k - 1)
        elif not any(good):
            continue
        else:
            first_bad = good.index(False)
            cand, run, run_start = None, 0, None
            for s in range(1, k + 1):
                i = (first_bad + s) % k
                if good[i]:
                    if run == 0:
                        run_start = i
                    run += 1
                    if cand is None or run > cand.length:
                        cand = CyclePath(c, run_start, run)
                else:
                    run = 0
        if cand is not None and (best is None or cand.length > best.length):
            best = cand
    if best is None or best.length < max(t, 1):
        return None
    return best


def find_small_weight_cycle(g: ColoredGraph, m: PerfectMatching, c: AlternatingCycle, path: CyclePath,
                            color, mode: str = "alpha") -> AlternatingCycle | None:
    """Chord cycle ``e1 + e2 + two subpaths of path`` with weight in ``(0, 2]`` (blue path) or ``[-2, 0)`` (red path).

    The number of edges of the opposite color in the result equals the
    absolute value of its weight.
    """
    color = _color(color)
    if path.cycle != c:
        raise InputError("path must lie on c")
    if mode == "beta" and not g.is_bipartite:
        raise InputError("beta mode needs a bipartite graph")
    verts, edges = path.vertices, path.edges
    flags = [e in m.edges for e in edges]
    cyc = c.edge_set
    # segments [a, b] of the path that start and end with a matching edge
    segs = [(a, b) for a in range(len(edges)) for b in range(a + 1, len(edges) + 1)
            if flags[a] and flags[b - 1]]
    off = color.other
    for (a, b), (p, q) in combinations(segs, 2):
        if b >= p:
            continue
        for x, y in (((a, p), (b, q)), ((a, q), (b, p))):
            e1 = g.find_edge(verts[x[0]], verts[x[1]])
            e2 = g.find_edge(verts[y[0]], verts[y[1]])
            if e1 is None or e2 is None or e1 in cyc or e2 in cyc:
                continue
            new = set(edges[a:b]) | set(edges[p:q]) | {e1, e2}
            try:
                found = cycles_from_edges(g, new)
            except InputError:
                continue
            if len(found) != 1 or not found[0].is_alternating(m):
                continue
            w = found[0].weight(g, m)
            n_off = sum(1 for e in found[0].edges if g.colors[e] is off)
            if color is Color.BLUE and 0 < w <= 2 and n_off == w:
                return found[0]
            if color is Color.RED and -2 <= w < 0 and n_off == -w:
                return found[0]
    return None
