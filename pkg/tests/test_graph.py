from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactmatch.errors import InputError
from exactmatch.graph import (
    AlternatingCycle,
    Color,
    ColoredGraph,
    PerfectMatching,
    cycle_path,
    cycles_from_edges,
    edge_weight,
    red_count,
    sym_diff_cycles,
    toggle,
    weight_sum,
)

from _util import cycle_graph, pm_pairs, rng_for


@pytest.fixture
def square():
    # 1-2 r, 2-3 b, 3-4 r, 4-1 b
    g = cycle_graph("rbrb")
    reds = PerfectMatching.from_pairs(g, [(1, 2), (3, 4)])
    blues = PerfectMatching.from_pairs(g, [(2, 3), (1, 4)])
    return g, reds, blues


class TestColoredGraph:
    def test_rejects_loops_and_parallel_edges(self):
        with pytest.raises(InputError):
            ColoredGraph.from_edges(3, [(1, 1, "r")])
        with pytest.raises(InputError):
            ColoredGraph.from_edges(3, [(1, 2, "r"), (2, 1, "b")])

    def test_rejects_bad_endpoint_and_color(self):
        with pytest.raises(InputError):
            ColoredGraph.from_edges(3, [(1, 4, "r")])
        with pytest.raises(InputError):
            ColoredGraph.from_edges(3, [(1, 2, "g")])

    def test_bipartition_must_be_crossed(self):
        with pytest.raises(InputError):
            ColoredGraph.from_edges(4, [(1, 2, "r")], n_a=2)
        g = ColoredGraph.from_edges(4, [(1, 3, "r"), (2, 4, "b")], n_a=2)
        assert g.is_bipartite and g.side(1) == "A" and g.side(4) == "B"

    def test_swap_colors(self, square):
        g, reds, _ = square
        h = g.swap_colors()
        assert PerfectMatching(h, reds.edges).red == 0
        assert h.edges == g.edges


class TestPerfectMatching:
    def test_must_cover_every_vertex(self, square):
        g, _, _ = square
        with pytest.raises(InputError):
            PerfectMatching.from_pairs(g, [(1, 2)])

    def test_edges_must_not_overlap(self):
        g = ColoredGraph.from_edges(4, [(1, 2, "r"), (2, 3, "b"), (3, 4, "r")])
        with pytest.raises(InputError):
            PerfectMatching.from_pairs(g, [(1, 2), (2, 3), (3, 4)])

    def test_missing_edge(self, square):
        g, _, _ = square
        with pytest.raises(InputError):
            PerfectMatching.from_pairs(g, [(1, 3), (2, 4)])


class TestEdgeWeight:
    def test_definition(self, square):
        g, reds, blues = square
        assert edge_weight(g, reds, (2, 3)) == 0
        assert edge_weight(g, blues, (1, 2)) == 1
        assert edge_weight(g, reds, (1, 2)) == -1

    def test_unknown_edge(self, square):
        g, reds, _ = square
        with pytest.raises(InputError):
            edge_weight(g, reds, (1, 3))
        with pytest.raises(InputError):
            weight_sum(g, reds, [99])

    def test_weight_sum_examples(self, square):
        g, reds, _ = square
        assert weight_sum(g, reds, []) == 0
        path = ColoredGraph.from_edges(6, [(i, i + 1, "b") for i in range(1, 6)])
        pm = PerfectMatching.from_pairs(path, [(1, 2), (3, 4), (5, 6)])
        assert weight_sum(path, pm, range(5)) == 0

    def test_weight_sum_equals_per_edge_loop(self):
        rng = rng_for(3)
        g = ColoredGraph.from_edges(8, [(u, v, "r" if rng.random() < 0.5 else "b")
                                        for u in range(1, 9) for v in range(u + 1, 9)])
        m = PerfectMatching.from_pairs(g, [(1, 2), (3, 4), (5, 6), (7, 8)])
        for _ in range(50):
            es = rng.choice(g.m, size=10, replace=False).tolist()
            expected = 0
            for e in es:
                if g.colors[e] is Color.RED:
                    expected += -1 if e in m.edges else 1
            assert weight_sum(g, m, es) == expected
            assert red_count(g, es) == sum(g.colors[e] is Color.RED for e in es)


class TestSymDiff:
    def test_identical(self, square):
        g, reds, _ = square
        assert len(sym_diff_cycles(g, reds, reds)) == 0

    def test_square(self, square):
        g, reds, blues = square
        cs = sym_diff_cycles(g, reds, blues)
        assert len(cs) == 1 and len(cs.cycles[0]) == 4
        assert cs.weight == -2
        assert cs.other() == blues

    def test_rejects_non_matching(self, square):
        g, reds, _ = square
        with pytest.raises(InputError):
            sym_diff_cycles(g, reds, frozenset({0, 2}))

    @settings(max_examples=150, deadline=None)
    @given(pm_pairs())
    def test_red_count_identity(self, data):
        g, m, m2 = data
        cs = sym_diff_cycles(g, m, m2)
        assert m2.red == m.red + cs.weight
        for c in cs.cycles:
            assert len(c) % 2 == 0
            assert c.is_alternating(m) and c.is_alternating(m2)
        assert cs.edge_set == m.edges ^ m2.edges


class TestToggle:
    def test_square_raises_red_count(self, square):
        g, reds, blues = square
        (c,) = sym_diff_cycles(g, blues, reds).cycles
        assert c.weight(g, blues) == 2
        assert toggle(blues, c).red == blues.red + 2

    def test_not_alternating(self):
        g = ColoredGraph.from_edges(4, [(u, v, "b") for u in range(1, 5) for v in range(u + 1, 5)])
        m = PerfectMatching.from_pairs(g, [(1, 2), (3, 4)])
        # 1-3-2-4 uses no matching edge
        ids = tuple(g.edge_id(*p) for p in [(1, 3), (3, 2), (2, 4), (4, 1)])
        with pytest.raises(InputError):
            toggle(m, AlternatingCycle((1, 3, 2, 4), ids))

    @settings(max_examples=100, deadline=None)
    @given(pm_pairs(), st.data())
    def test_involution_and_delta(self, data, draw):
        g, m, m2 = data
        cs = sym_diff_cycles(g, m, m2)
        if not cs.cycles:
            return
        sub = draw.draw(st.lists(st.sampled_from(cs.cycles), unique=True, min_size=1))
        once = toggle(m, sub)
        assert once.red == m.red + sum(c.weight(g, m) for c in sub)
        assert toggle(once, sub) == m


class TestCyclePath:
    def hexagon(self):
        g = cycle_graph("rbrbrb")
        (c,) = cycles_from_edges(g, range(6))
        return c

    def test_orientation_is_canonical(self):
        c = self.hexagon()
        assert c.vertices == (1, 2, 3, 4, 5, 6)

    def test_degenerate_and_adjacent(self):
        c = self.hexagon()
        assert cycle_path(c, 3, 3) == ()
        assert cycle_path(c, 3, 4) == (c.edges[2],)

    def test_antipodal(self):
        c = self.hexagon()
        there, back = cycle_path(c, 2, 5), cycle_path(c, 5, 2)
        assert len(there) == len(back) == 3
        assert set(there) | set(back) == set(c.edges)

    def test_vertex_not_on_cycle(self):
        with pytest.raises(InputError):
            cycle_path(self.hexagon(), 1, 9)

    @given(st.integers(4, 12), st.data())
    def test_paths_cover_cycle(self, k, data):
        g = cycle_graph("b" * k)
        (c,) = cycles_from_edges(g, range(k))
        u, v = data.draw(st.integers(1, k)), data.draw(st.integers(1, k))
        a, b = cycle_path(c, u, v), cycle_path(c, v, u)
        if u == v:
            assert a == b == ()
        else:
            assert len(a) + len(b) == k and set(a) | set(b) == set(c.edges)
