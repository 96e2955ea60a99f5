from __future__ import annotations

import pytest

from exactmatch.errors import InputError
from exactmatch.graph import ColoredGraph, PerfectMatching
from exactmatch.io import Instance, ParseError, parse_instance, parse_matching, render_instance, render_report

from _util import random_bipartite, random_digraph, random_graph, rng_for


def test_smallest_example():
    inst = parse_instance("p em 2 1 0\ne 1 2 b\n")
    assert inst.kind == "em" and inst.k == 0
    assert inst.graph.n == 2 and inst.graph.edges == ((1, 2),)


def test_round_trip():
    rng = rng_for(7)
    for i in range(100):
        if i % 3 == 0:
            inst = Instance("mocp", digraph=random_digraph(rng, int(rng.integers(2, 9)), 12))
        elif i % 3 == 1:
            inst = Instance("em", random_bipartite(rng, int(rng.integers(1, 6)), 0.6, 0.5), int(rng.integers(0, 4)))
        else:
            inst = Instance("em", random_graph(rng, int(rng.integers(1, 11)), 0.5, 0.5), int(rng.integers(0, 4)))
        text = render_instance(inst, comment="seeded")
        back = parse_instance(text)
        assert render_instance(back, comment="seeded") == text
        if inst.kind == "em":
            assert back.graph.edges == inst.graph.edges and back.graph.colors == inst.graph.colors
            assert back.graph.sides == inst.graph.sides and back.k == inst.k
        else:
            assert back.digraph.arcs == inst.digraph.arcs and back.digraph.weights == inst.digraph.weights


@pytest.mark.parametrize("text,lineno", [
    ("c hi\ne 1 2 r\n", 2),
    ("p em 2 1 0\ne 1 2 g\n", 2),
    ("p em 2 1 0\ne 1 3 r\n", 2),
    ("p em 2 1 0\ne 1 1 r\n", 2),
    ("p em 3 2 0\ne 1 2 r\ne 2 1 b\n", 3),
    ("p em 2 1 x\n", 1),
    ("p tsp 2 1\n", 1),
    ("p em 2 1 0\np em 2 1 0\n", 2),
    ("p mocp 2 1\na 1 2 -1\n", 2),
    ("p mocp 2 1\ne 1 2 r\n", 2),
    ("p em 4 1 0\nt bipartite 2\ne 1 2 r\n", 3),
    ("p em 4 1 0\ne 1 3 r\nt bipartite 2\n", 3),
    ("p em 2 2 0\ne 1 2 r\n", 0),
    ("", 0),
])
def test_parse_errors_name_the_line(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"line {lineno}:")


def test_bipartition_violation_message():
    with pytest.raises(ParseError, match="does not cross the bipartition"):
        parse_instance("p em 4 1 0\nt bipartite 2\ne 3 4 b\n")


def test_report_round_trip():
    g = ColoredGraph.from_edges(4, [(1, 2, "r"), (3, 4, "b"), (1, 3, "b"), (2, 4, "b")])
    pm = PerfectMatching.from_pairs(g, [(1, 2), (3, 4)])
    text = render_report("yes", pm)
    assert text.splitlines()[0] == "s yes r=1"
    assert parse_matching(text, g) == pm
    assert parse_matching(render_report("no"), g) is None
    assert parse_matching(render_report("budget"), g) is None
    with pytest.raises(InputError):
        render_report("maybe")


def test_matching_errors():
    g = ColoredGraph.from_edges(4, [(1, 2, "r"), (3, 4, "b")])
    with pytest.raises(ParseError, match="no edge 1-3"):
        parse_matching("s yes\nm 1 3\n", g)
    with pytest.raises(InputError):
        parse_matching("s yes\nm 1 2\n", g)  # 3 and 4 uncovered
