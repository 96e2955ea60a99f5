from __future__ import annotations

import heapq

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactmatch.errors import InputError
from exactmatch.mocp import Walk, WeightedDigraph, extract_odd_cycle, min_odd_closed_walk_through, solve_mocp
from exactmatch.oracles import brute_mocp

from _util import random_digraph, rng_for


@st.composite
def digraphs(draw, max_n=8, wmax=5):
    n = draw(st.integers(2, max_n))
    arcs = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n), st.integers(0, wmax)), max_size=3 * n))
    return WeightedDigraph.from_arcs(n, [a for a in arcs if a[0] != a[1]])


def triangle(w=(1, 1, 1)):
    return WeightedDigraph.from_arcs(3, [(1, 2, w[0]), (2, 3, w[1]), (3, 1, w[2])])


def test_triangle():
    c = solve_mocp(triangle())
    assert c.weight(triangle().weights) == 3 and c.is_simple()


def test_all_even():
    assert solve_mocp(triangle((2, 0, 4))) is None


def test_negative_weight_rejected():
    with pytest.raises(InputError):
        solve_mocp(triangle((1, -1, 1)))


def test_walk_through_triangle():
    d = triangle((1, 0, 0))
    z = min_odd_closed_walk_through(d, None, 0)
    assert z.closed and z.weight(d.weights) == 1


def test_walk_through_dead_end():
    d = WeightedDigraph.from_arcs(3, [(1, 2, 1), (2, 3, 0)])
    assert min_odd_closed_walk_through(d, None, 0) is None


def test_walk_through_even_arc():
    with pytest.raises(InputError):
        min_odd_closed_walk_through(triangle((2, 1, 0)), None, 0)


class TestExtract:
    def test_simple_walk_is_returned(self):
        d = triangle()
        z = Walk((1, 2, 3, 1), (0, 1, 2))
        c = extract_odd_cycle(d, None, z)
        assert c.vertices == (1, 2, 3) and c.arcs == (0, 1, 2)

    def test_figure_eight(self):
        # cycle A = 1->2->3->1 of weight 1, cycle B = 1->4->5->1 of weight 2
        d = WeightedDigraph.from_arcs(5, [(1, 2, 1), (2, 3, 0), (3, 1, 0), (1, 4, 1), (4, 5, 1), (5, 1, 0)])
        z = Walk((1, 2, 3, 1, 4, 5, 1), (0, 1, 2, 3, 4, 5))
        c = extract_odd_cycle(d, None, z)
        assert set(c.arcs) == {0, 1, 2}
        # B first, then A
        z = Walk((1, 4, 5, 1, 2, 3, 1), (3, 4, 5, 0, 1, 2))
        assert set(extract_odd_cycle(d, None, z).arcs) == {0, 1, 2}

    def test_rejects_even_or_open(self):
        d = triangle((1, 1, 0))
        with pytest.raises(InputError):
            extract_odd_cycle(d, None, Walk((1, 2, 3, 1), (0, 1, 2)))
        with pytest.raises(InputError):
            extract_odd_cycle(d, None, Walk((1, 2), (0,)))

    def test_rejects_broken_walk(self):
        with pytest.raises(InputError):
            extract_odd_cycle(triangle(), None, Walk((1, 3, 2, 1), (0, 1, 2)))


def _min_walk_bruteforce(d, e):
    """Minimum odd closed walk using arc e exactly once, by Dijkstra on (vertex, parity)."""
    w = d.weights
    u, v = d.arcs[e]
    dist = {(v, 0): 0}
    heap = [(0, v, 0)]
    while heap:
        dd, x, p = heapq.heappop(heap)
        if dd > dist.get((x, p), 1 << 60):
            continue
        for a, (s, t) in enumerate(d.arcs):
            if s != x or a == e:
                continue
            key = (t, (p + w[a]) % 2)
            if dd + w[a] < dist.get(key, 1 << 60):
                dist[key] = dd + w[a]
                heapq.heappush(heap, (dd + w[a], *key))
    back = dist.get((u, 0))
    return None if back is None else back + w[e]


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_per_arc_walk_is_minimum(d):
    for e, wt in enumerate(d.weights):
        if wt % 2 == 0:
            continue
        z = min_odd_closed_walk_through(d, None, e)
        want = _min_walk_bruteforce(d, e)
        if want is None:
            assert z is None
        else:
            z.check(d)
            assert z.closed and z.arcs.count(e) == 1 and z.weight(d.weights) == want


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=9))
def test_matches_cycle_enumeration(d):
    got, want = solve_mocp(d), brute_mocp(d)
    if want is None:
        assert got is None
        return
    got.check(d)
    assert got.is_simple()
    assert got.weight(d.weights) % 2 == 1
    assert got.weight(d.weights) == want.weight(d.weights)


def test_layered_distance_matches_a_real_walk():
    rng = rng_for(2)
    for _ in range(100):
        d = random_digraph(rng, 7, 18)
        for e, wt in enumerate(d.weights):
            if wt % 2:
                z = min_odd_closed_walk_through(d, None, e)
                if z is not None:
                    z.check(d)
                    rest = z.weight(d.weights) - wt
                    assert rest % 2 == 0 and z.arcs[0] == e


def test_parallel_arcs_are_distinct():
    d = WeightedDigraph.from_arcs(2, [(1, 2, 2), (1, 2, 1), (2, 1, 0)])
    c = solve_mocp(d)
    assert c.weight(d.weights) == 1 and 1 in c.arcs
