from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from conftest import colored_graphs, multiplicity_graphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import color_sets_at, iso_distance

from multituran.core import (
    ColoredMultigraph,
    MultiplicityGraph,
    complete_pattern,
    degree_into,
    heavy_neighbor,
    pairs,
    symmetric_difference,
    turan_graph,
    turan_numbers,
)
from multituran.exceptions import CapabilityError, InputError
from multituran.nesting import to_multiplicity


def kn(n, m, k=None):
    return MultiplicityGraph(n, m if k is None else k, (m,) * comb(n, 2))


def test_degree_into_triple_triangle():
    assert degree_into(kn(3, 3), 0, {1, 2}) == 6


def test_degree_into_empty_set():
    assert degree_into(kn(5, 2), 3, set()) == 0


def test_degree_into_rejects_bad_vertex():
    with pytest.raises(InputError):
        degree_into(kn(3, 1), 5, {0})
    with pytest.raises(InputError):
        degree_into(kn(3, 1), 0, {7})


@given(colored_graphs(), st.data())
def test_degree_into_matches_color_recount(g, data):
    if g.n == 0:
        return
    v = data.draw(st.integers(0, g.n - 1))
    T = data.draw(st.sets(st.integers(0, g.n - 1)))
    colors = [set(c) for c in g.colors]
    expected = sum(len(color_sets_at(colors, v, u)) for u in T if u != v)
    assert degree_into(g, v, T) == expected


@given(colored_graphs())
def test_degree_sum_is_twice_edges(g):
    assert sum(g.degrees()) == 2 * g.edge_count
    h = to_multiplicity(g)
    assert sum(h.degrees()) == 2 * h.edge_count


def test_turan_graph_small_cases():
    assert turan_graph(6, 3).edge_count == 12
    g = turan_graph(5, 2)
    assert g.edge_count == 6 and min(g.degrees()) == 2
    for n in range(1, 8):
        assert turan_graph(n, n).edge_count == comb(n, 2)


def test_turan_graph_part_rule():
    g = turan_graph(7, 3)
    for u, v in pairs(7):
        assert g.weight(u, v) == int(u % 3 != v % 3)


def test_turan_graph_rejects_zero_parts():
    with pytest.raises(InputError):
        turan_graph(4, 0)


def test_turan_numbers_examples():
    assert turan_numbers(7, 3)[1] == 4
    assert turan_numbers(4, 2)[0] == 4


@pytest.mark.parametrize("n", range(1, 13))
def test_turan_numbers_match_construction(n):
    for p in range(1, n + 1):
        g = turan_graph(n, p)
        assert turan_numbers(n, p) == (g.edge_count, min(g.degrees()))


def test_turan_sandwich_bounds():
    for n in range(2, 201):
        for p in range(2, n + 1):
            t, d = turan_numbers(n, p)
            f = Fraction(p - 1, p)
            assert f * comb(n, 2) < t <= f * n * n / 2
            assert f * (n - 1) <= d <= f * n


def test_heavy_neighbor_examples():
    res = heavy_neighbor(kn(4, 2), {0, 1}, 2)
    assert res.vertex == 2 and res.degree == 4 and res.meets_threshold
    g = MultiplicityGraph.from_edges(4, 1, [(2, 3, 1)])
    res = heavy_neighbor(g, {0, 1}, 1)
    assert res.degree == 0 and res.vertex == 2 and not res.meets_threshold
    assert heavy_neighbor(kn(3, 1), {0, 1, 2}) is None


@given(multiplicity_graphs(min_n=2), st.data())
def test_heavy_neighbor_is_argmax(g, data):
    T = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n - 1))
    res = heavy_neighbor(g, T, 1)
    scores = {v: sum(g.weight(v, u) for u in T) for v in range(g.n) if v not in T}
    best = max(scores.values())
    assert res.degree == best
    assert res.vertex == min(v for v, s in scores.items() if s == best)


def test_symmetric_difference_examples():
    g = kn(3, 2, 3)
    assert symmetric_difference(g, g) == 0
    assert symmetric_difference(g, kn(3, 3)) == 3


def test_symmetric_difference_errors():
    with pytest.raises(InputError):
        symmetric_difference(kn(3, 1), kn(4, 1))
    with pytest.raises(CapabilityError):
        symmetric_difference(kn(9, 1), kn(9, 1), upto_iso=True)


def test_iso_distance_matches_permutation_bruteforce():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 6)
        k = rng.randint(1, 3)
        w1 = tuple(rng.randint(0, k) for _ in range(comb(n, 2)))
        w2 = tuple(rng.randint(0, k) for _ in range(comb(n, 2)))
        g1, g2 = MultiplicityGraph(n, k, w1), MultiplicityGraph(n, k, w2)
        assert symmetric_difference(g1, g2, upto_iso=True) == iso_distance(n, w1, w2)


@given(st.integers(1, 5), st.data())
def test_labeled_distance_is_pseudometric(n, data):
    size = comb(n, 2)
    gs = [MultiplicityGraph(n, 3, tuple(data.draw(st.lists(st.integers(0, 3), min_size=size, max_size=size))))
          for _ in range(3)]
    a, b, c = gs
    assert symmetric_difference(a, b) == symmetric_difference(b, a)
    assert symmetric_difference(a, c) <= symmetric_difference(a, b) + symmetric_difference(b, c)
    assert symmetric_difference(a, a) == 0


def test_invalid_graphs_rejected():
    with pytest.raises(InputError):
        MultiplicityGraph(3, 1, (2, 0, 0))
    with pytest.raises(InputError):
        MultiplicityGraph.from_matrix(1, [[1, 0], [0, 0]])
    with pytest.raises(InputError):
        ColoredMultigraph(3, 1, (frozenset({(1, 1)}),))
    with pytest.raises(InputError):
        ColoredMultigraph(3, 2, (frozenset(),))


def test_pattern_edge_count():
    assert complete_pattern(5).h == 10
