from __future__ import annotations

import pytest
from hypothesis import given, settings

from exactmatch.cpm import F2Vector, decide_cpm, exists_odd_red_pm, hull_basis, red_vector, solve_cpm
from exactmatch.errors import BudgetExceeded, InputError
from exactmatch.graph import ColoredGraph, PerfectMatching
from exactmatch.oracles import brute_decide, enumerate_pms

from _util import colored_graphs, cycle_graph, random_graph, rng_for


def with_red_edge(g):
    """g plus a disjoint red edge on two new vertices."""
    edges = [(u, v, c) for (u, v), c in zip(g.edges, g.colors)]
    return ColoredGraph.from_edges(g.n + 2, edges + [(g.n + 1, g.n + 2, "r")])


class TestVectors:
    def test_dot_and_add(self):
        a, b = F2Vector.from_edges(4, [0, 1]), F2Vector.from_edges(4, [1, 2])
        assert a.dot(b) == 1 and (a + b).bits == 0b101

    def test_dimension_checks(self):
        with pytest.raises(InputError):
            F2Vector(2, 0b100)
        with pytest.raises(InputError):
            F2Vector(2, 1).dot(F2Vector(3, 1))


class TestHull:
    def test_single_pm(self):
        g = ColoredGraph.from_edges(4, [(1, 2, "r"), (3, 4, "b"), (2, 3, "b")])
        (v,) = hull_basis(g).vectors
        assert v == F2Vector.from_edges(g.m, [0, 1])

    def test_square_has_dimension_two(self):
        assert len(hull_basis(cycle_graph("rbrb"))) == 2

    def test_no_pm(self):
        assert len(hull_basis(ColoredGraph.from_edges(4, [(1, 2, "r")]))) == 0

    def test_unknown_provider_and_cap(self):
        with pytest.raises(InputError):
            hull_basis(cycle_graph("rbrb"), "lovasz")
        with pytest.raises(BudgetExceeded):
            hull_basis(random_graph(rng_for(0), 18, 0.5, 0.5))

    @settings(max_examples=60, deadline=None)
    @given(colored_graphs(max_n=10))
    def test_every_pm_is_in_the_span(self, g):
        basis = hull_basis(g)
        assert len(basis) <= g.m
        for x in enumerate_pms(g):
            assert basis.reduce(F2Vector.from_edges(g.m, x.edges)).bits == 0


class TestOddRed:
    def test_examples(self):
        blue = cycle_graph("bbbb")
        assert not exists_odd_red_pm(hull_basis(blue), red_vector(blue))
        one = ColoredGraph.from_edges(4, [(1, 2, "r"), (3, 4, "b")])
        assert exists_odd_red_pm(hull_basis(one), red_vector(one))

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            exists_odd_red_pm(hull_basis(cycle_graph("bbbb")), F2Vector(3, 0))

    @settings(max_examples=100, deadline=None)
    @given(colored_graphs(max_n=12))
    def test_matches_enumeration(self, g):
        want = any(x.red % 2 for x in enumerate_pms(g))
        assert exists_odd_red_pm(hull_basis(g), red_vector(g)) == want


class TestDecide:
    def test_all_blue(self):
        g = cycle_graph("bbbb")
        assert not decide_cpm(g, 1)
        assert decide_cpm(g, 2)

    @settings(max_examples=100, deadline=None)
    @given(colored_graphs(max_n=12))
    def test_matches_enumeration(self, g):
        for k in (0, 1):
            assert decide_cpm(g, k) == (brute_decide("cpm", g, k) is not None)

    @settings(max_examples=100, deadline=None)
    @given(colored_graphs(max_n=10))
    def test_parity_flip_equals_explicit_gadget(self, g):
        h = with_red_edge(g)
        for k in (0, 2):
            assert decide_cpm(g, k) == exists_odd_red_pm(hull_basis(h), red_vector(h))
        # and back: the gadget graph with an odd target sees the same answer
        assert decide_cpm(h, 1) == decide_cpm(g, 0)


class TestSolve:
    def test_no(self):
        assert solve_cpm(cycle_graph("bbbb"), 1) is None

    def test_graph_is_a_pm(self):
        g = ColoredGraph.from_edges(4, [(1, 2, "r"), (3, 4, "b")])
        assert solve_cpm(g, 1).edges == frozenset({0, 1})

    def test_random(self):
        rng = rng_for(31)
        for _ in range(150):
            g = random_graph(rng, int(rng.choice([4, 6, 8, 10, 12])), rng.uniform(0.2, 0.8), rng.uniform(0, 1))
            for k in (0, 1):
                stats = {}
                got = solve_cpm(g, k, stats=stats)
                assert (got is None) == (brute_decide("cpm", g, k) is None)
                if got is not None:
                    assert isinstance(got, PerfectMatching) and (got.red - k) % 2 == 0
                assert stats["decide_calls"] <= g.m * g.m + 1
