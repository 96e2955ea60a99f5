"""Line-oriented text formats for instances, matchings and reports.

Instance::

    c optional comments
    p em <n> <m> <k>          or   p mocp <n> <m>
    t bipartite <nA>          (em only, before any edge; side A = 1..nA)
    e <u> <v> <r|b>           (em, m lines)
    a <u> <v> <w>             (mocp, m lines)

Report::

    s yes r=<int>  followed by  m <u> <v>  per matching edge
    s no
    s budget
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .graph import ColoredGraph, PerfectMatching
from .mocp import WeightedDigraph

__all__ = ["ParseError", "Instance", "parse_instance", "render_instance", "parse_matching", "render_report"]


class ParseError(InputError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Instance:
    kind: str  # "em" | "mocp"
    graph: ColoredGraph | None = None
    k: int = 0
    digraph: WeightedDigraph | None = None


def _ints(lineno, parts, count):
    if len(parts) != count:
        raise ParseError(lineno, f"expected {count} fields, got {len(parts)}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError(lineno, "expected integers") from None


def parse_instance(text: str) -> Instance:
    header = None
    n_a = None
    items: list[tuple[int, tuple]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *rest = line.split()
        if tag == "p":
            if header is not None:
                raise ParseError(lineno, "second header line")
            if not rest or rest[0] not in ("em", "mocp"):
                raise ParseError(lineno, "header must be 'p em n m k' or 'p mocp n m'")
            nums = _ints(lineno, rest[1:], 3 if rest[0] == "em" else 2)
            if nums[0] < 1 or nums[1] < 0:
                raise ParseError(lineno, "n must be positive and m non-negative")
            header = (rest[0], *nums)
            continue
        if header is None:
            raise ParseError(lineno, "content before the 'p' header")
        kind, n = header[0], header[1]
        if tag == "t":
            if kind != "em" or len(rest) != 2 or rest[0] != "bipartite":
                raise ParseError(lineno, "expected 't bipartite <nA>' in an em instance")
            if n_a is not None or items:
                raise ParseError(lineno, "the bipartition line must come once, before edges")
            (n_a,) = _ints(lineno, rest[1:], 1)
            if not 0 <= n_a <= n:
                raise ParseError(lineno, f"side A size {n_a} outside 0..{n}")
        elif tag == "e" and kind == "em":
            if len(rest) != 3:
                raise ParseError(lineno, "expected 'e <u> <v> <r|b>'")
            u, v = _ints(lineno, rest[:2], 2)
            if rest[2] not in ("r", "b"):
                raise ParseError(lineno, f"color must be r or b, not {rest[2]!r}")
            _check_ends(lineno, u, v, n)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(lineno, f"duplicate edge {u}-{v} (first on line {seen[key]})")
            seen[key] = lineno
            if n_a is not None and (u <= n_a) == (v <= n_a):
                raise ParseError(lineno, f"edge {u}-{v} does not cross the bipartition")
            items.append((lineno, (u, v, rest[2])))
        elif tag == "a" and kind == "mocp":
            u, v, w = _ints(lineno, rest, 3)
            _check_ends(lineno, u, v, n)
            if w < 0:
                raise ParseError(lineno, f"negative arc weight {w}")
            items.append((lineno, (u, v, w)))
        else:
            raise ParseError(lineno, f"unexpected line type {tag!r}")
    if header is None:
        raise ParseError(0, "missing 'p' header")
    kind, n, m = header[0], header[1], header[2]
    if len(items) != m:
        raise ParseError(0, f"header announces {m} {'edges' if kind == 'em' else 'arcs'}, found {len(items)}")
    triples = [t for _, t in items]
    if kind == "em":
        k = header[3]
        if k < 0:
            raise ParseError(0, "k must be non-negative")
        return Instance("em", ColoredGraph.from_edges(n, triples, n_a=n_a), k)
    return Instance("mocp", digraph=WeightedDigraph.from_arcs(n, triples))


def _check_ends(lineno, u, v, n):
    if not (1 <= u <= n and 1 <= v <= n):
        raise ParseError(lineno, f"endpoint outside 1..{n}")
    if u == v:
        raise ParseError(lineno, f"self-loop at {u}")


def render_instance(inst: Instance, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    if inst.kind == "em":
        g = inst.graph
        out.append(f"p em {g.n} {g.m} {inst.k}")
        if g.is_bipartite:
            n_a = sum(1 for s in g.sides if s == "A")
            if g.sides != tuple("A" if v <= n_a else "B" for v in range(1, g.n + 1)):
                raise InputError("the text format needs side A to be 1..nA")
            out.append(f"t bipartite {n_a}")
        out.extend(f"e {u} {v} {c.value}" for (u, v), c in zip(g.edges, g.colors))
    else:
        d = inst.digraph
        out.append(f"p mocp {d.n} {len(d.arcs)}")
        out.extend(f"a {x} {y} {w}" for (x, y), w in zip(d.arcs, d.weights))
    return "\n".join(out) + "\n"


def parse_matching(text: str, g: ColoredGraph) -> PerfectMatching | None:
    """Read ``m u v`` lines; ``None`` if the report says ``s no`` or ``s budget``."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *rest = line.split()
        if tag == "s":
            if rest and rest[0] in ("no", "budget"):
                return None
        elif tag == "m":
            u, v = _ints(lineno, rest, 2)
            if g.find_edge(u, v) is None:
                raise ParseError(lineno, f"no edge {u}-{v} in the instance")
            pairs.append((u, v))
        else:
            raise ParseError(lineno, f"unexpected line type {tag!r}")
    return PerfectMatching.from_pairs(g, pairs)


def render_report(status: str, pm: PerfectMatching | None = None) -> str:
    if status == "yes":
        lines = [f"s yes r={pm.red}"] + [f"m {u} {v}" for u, v in pm.pairs()]
        return "\n".join(lines) + "\n"
    if status in ("no", "budget"):
        return f"s {status}\n"
    raise InputError(f"unknown report status {status!r}")
