"""Correct parity matching through the F2 span of perfect matchings.

Some PM has an odd number of red edges iff some vector of a basis of the
span has odd inner product with the red indicator (the inner product is
linear, so it is odd somewhere on the span iff it is odd on a basis
vector). Even targets use the star ``delta(v)`` of a vertex: every PM meets
it in exactly one edge, so ``<1_M, r + delta(v)> = r(M) + 1``. This is the
same as adding a disjoint red edge to the graph, without touching it.

Vectors are Python ints used as bitsets over edge ids.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .errors import BudgetExceeded, InputError
from .graph import Color, ColoredGraph, PerfectMatching
from .matching import pm_exists
from .oracles import ENUM_CAP

__all__ = ["F2Vector", "HullBasis", "hull_basis", "exists_odd_red_pm", "decide_cpm", "solve_cpm"]


@dataclass(frozen=True)
class F2Vector:
    dim: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.dim:
            raise InputError("vector has bits beyond its dimension")

    @classmethod
    def from_edges(cls, dim, eids) -> "F2Vector":
        bits = 0
        for e in eids:
            bits |= 1 << e
        return cls(dim, bits)

    def dot(self, other: "F2Vector") -> int:
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch {self.dim} != {other.dim}")
        return bin(self.bits & other.bits).count("1") & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch {self.dim} != {other.dim}")
        return F2Vector(self.dim, self.bits ^ other.bits)


@dataclass(frozen=True)
class HullBasis:
    dim: int
    vectors: tuple[F2Vector, ...]
    provenance: str = "brute-force"

    def __len__(self):
        return len(self.vectors)

    def reduce(self, v: F2Vector) -> F2Vector:
        """Residue of ``v`` after elimination; zero iff ``v`` is in the span."""
        bits = v.bits
        for b in self._echelon():
            if bits & (1 << (b.bit_length() - 1)):
                bits ^= b
        return F2Vector(self.dim, bits)

    def _echelon(self) -> list[int]:
        rows: list[int] = []
        for vec in self.vectors:
            x = vec.bits
            for r in rows:
                if x & (1 << (r.bit_length() - 1)):
                    x ^= r
            if x:
                rows.append(x)
                rows.sort(reverse=True)
        return rows


def _insert(rows: dict[int, int], x: int) -> bool:
    """Add ``x`` to an echelon form keyed by leading bit; False if dependent."""
    while x:
        lead = x.bit_length() - 1
        if lead not in rows:
            rows[lead] = x
            return True
        x ^= rows[lead]
    return False


def _pm_bitsets(g: ColoredGraph):
    """Incidence bitsets of all PMs, lowest uncovered vertex matched first."""
    if g.n > ENUM_CAP:
        raise BudgetExceeded(f"hull basis: n = {g.n} exceeds the enumeration cap {ENUM_CAP}")
    if g.n % 2:
        return
    adj = [[(1 << u, 1 << e) for u, e in g.neighbors(v)] for v in range(g.n + 1)]
    full = (1 << (g.n + 1)) - 2

    def rec(covered, acc):
        if covered == full:
            yield acc
            return
        free = ~covered & full
        low = free & -free
        v = low.bit_length() - 1
        for ubit, ebit in adj[v]:
            if not covered & ubit:
                yield from rec(covered | low | ubit, acc | ebit)

    yield from rec(0, 0)


def _brute_provider(g: ColoredGraph) -> list[int]:
    rows: dict[int, int] = {}
    basis = []
    for v in _pm_bitsets(g):
        if _insert(rows, v):
            basis.append(v)
            if len(basis) == g.m:
                break
    return basis


PROVIDERS: dict[str, Callable[[ColoredGraph], list[int]]] = {"brute-force": _brute_provider}


def hull_basis(g: ColoredGraph, provider: str = "brute-force") -> HullBasis:
    """Basis of the F2 span of all PM incidence vectors (PM vectors themselves)."""
    try:
        fn = PROVIDERS[provider]
    except KeyError:
        raise InputError(f"unknown hull provider {provider!r}") from None
    return HullBasis(g.m, tuple(F2Vector(g.m, b) for b in fn(g)), provider)


def red_vector(g: ColoredGraph) -> F2Vector:
    return F2Vector.from_edges(g.m, (e for e in range(g.m) if g.colors[e] is Color.RED))


def exists_odd_red_pm(basis: HullBasis, red: F2Vector) -> bool:
    if red.dim != basis.dim:
        raise InputError(f"red vector has dimension {red.dim}, basis {basis.dim}")
    return any(v.dot(red) for v in basis.vectors)


def _parity_vector(g: ColoredGraph, k: int) -> F2Vector:
    r = red_vector(g)
    if k % 2:
        return r
    star = F2Vector.from_edges(g.m, (e for _, e in g.neighbors(1)))
    return r + star


def decide_cpm(g: ColoredGraph, k: int, provider: str = "brute-force") -> bool:
    """Is there a PM with ``r = k (mod 2)``?"""
    if g.n % 2 or g.m == 0:
        return False
    return exists_odd_red_pm(hull_basis(g, provider), _parity_vector(g, k))


def solve_cpm(g: ColoredGraph, k: int, provider: str = "brute-force", stats: dict | None = None) -> PerfectMatching | None:
    """A PM with ``r = k (mod 2)`` by edge deletion, or ``None``.

    One pass in ascending edge id suffices: an edge that cannot be deleted
    now cannot be deleted later either, because deleting other edges only
    shrinks the set of PMs.
    """
    calls = 0

    def decide(h):
        nonlocal calls
        calls += 1
        return decide_cpm(h, k, provider)

    if not decide(g):
        if stats is not None:
            stats["decide_calls"] = calls
        return None
    keep = list(range(g.m))
    for e in range(g.m):
        trial = [x for x in keep if x != e]
        h, _ = g.subgraph(trial)
        if pm_exists(h) and decide(h):
            keep = trial
    if stats is not None:
        stats["decide_calls"] = calls
    m = PerfectMatching(g, frozenset(keep))
    if (m.red - k) % 2:
        raise AssertionError("edge deletion ended on a wrong-parity matching")  # pragma: no cover
    return m
