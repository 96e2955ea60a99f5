from __future__ import annotations

import pytest
from hypothesis import given, settings

from exactmatch.errors import BudgetExceeded, InputError
from exactmatch.graph import ColoredGraph
from exactmatch.mocp import WeightedDigraph
from exactmatch.oracles import (
    brute_decide,
    brute_independence,
    brute_mocp,
    count_pms,
    enumerate_pms,
    simple_cycles,
)

from _util import colored_graphs, cycle_graph, random_graph, rng_for


def complete(n, color="b", n_a=None):
    if n_a is None:
        return ColoredGraph.from_edges(n, [(u, v, color) for u in range(1, n + 1) for v in range(u + 1, n + 1)])
    return ColoredGraph.from_edges(n, [(u, v, color) for u in range(1, n_a + 1) for v in range(n_a + 1, n + 1)], n_a=n_a)


def test_pm_counts():
    assert len(list(enumerate_pms(ColoredGraph.from_edges(2, [(1, 2, "r")])))) == 1
    assert len(list(enumerate_pms(cycle_graph("rbrb")))) == 2
    assert len(list(enumerate_pms(complete(6)))) == 15


def test_enumeration_is_distinct_and_deterministic():
    g = random_graph(rng_for(5), 10, 0.6, 0.5)
    a = [x.edges for x in enumerate_pms(g)]
    assert a == [x.edges for x in enumerate_pms(g)]
    assert len(set(a)) == len(a)


@settings(max_examples=100, deadline=None)
@given(colored_graphs(max_n=12))
def test_count_matches_enumeration(g):
    assert count_pms(g) == len(list(enumerate_pms(g)))


def test_cap_is_a_hard_abort():
    with pytest.raises(BudgetExceeded):
        next(enumerate_pms(complete(18)))
    with pytest.raises(BudgetExceeded):
        brute_decide("em", complete(18), 0)


def test_brute_decide_boxes():
    g = complete(4)
    assert brute_decide("em", g, 0).red == 0
    sq = cycle_graph("rbrb")
    assert brute_decide("em", sq, 1) is None
    assert brute_decide("bcpm", sq, 1) is None
    assert brute_decide("cpm", sq, 2).red % 2 == 0
    with pytest.raises(InputError):
        brute_decide("tsp", sq, 0)


@settings(max_examples=80, deadline=None)
@given(colored_graphs(max_n=10))
def test_em_yes_implies_bcpm_yes(g):
    for k in range(g.n // 2 + 1):
        if brute_decide("em", g, k) is not None:
            assert brute_decide("bcpm", g, k) is not None
            assert brute_decide("cpm", g, k) is not None


def test_brute_mocp_examples():
    dag = WeightedDigraph.from_arcs(3, [(1, 2, 1), (2, 3, 1)])
    assert brute_mocp(dag) is None
    tri = WeightedDigraph.from_arcs(3, [(1, 2, 1), (2, 3, 0), (3, 1, 0)])
    c = brute_mocp(tri)
    assert c.weight(tri.weights) == 1 and len(c.arcs) == 3


def test_simple_cycles_of_complete_digraph():
    # K4 with both arc directions: 6 two-cycles, 8 triangles, 6 four-cycles
    arcs = [(u, v, 0) for u in range(1, 5) for v in range(1, 5) if u != v]
    d = WeightedDigraph.from_arcs(4, arcs)
    assert len(list(simple_cycles(d))) == 20


def test_independence_numbers():
    assert brute_independence(complete(6)) == 1
    assert brute_independence(ColoredGraph.from_edges(7, [])) == 7
    assert brute_independence(cycle_graph("bbbbbb")) == 3
    assert brute_independence(complete(8, n_a=4), "beta") == 0
    # one missing edge between the sides gives a balanced pair
    g = ColoredGraph.from_edges(6, [(u, v, "b") for u in range(1, 4) for v in range(4, 7) if (u, v) != (1, 4)], n_a=3)
    assert brute_independence(g, "beta") == 1
    assert brute_independence(ColoredGraph.from_edges(6, [], n_a=3), "beta") == 3


def test_beta_needs_bipartition():
    with pytest.raises(InputError):
        brute_independence(complete(4), "beta")
