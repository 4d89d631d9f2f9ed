from __future__ import annotations

import random

from conftest import colored_graphs, multiplicity_graphs, patterns
from hypothesis import given, settings
from oracles import has_rainbow

from multituran.core import ColoredMultigraph, MultiplicityGraph, pairs
from multituran.nesting import from_multiplicity, nest, to_multiplicity


def test_two_disjoint_singletons_become_chain():
    g = ColoredMultigraph(4, 2, (frozenset({(0, 1)}), frozenset({(2, 3)})))
    out = nest(g)
    assert out.colors == (frozenset({(0, 1), (2, 3)}), frozenset())
    assert out.weight(0, 1) == out.weight(2, 3) == 1


def test_nested_input_is_fixpoint_up_to_reindexing():
    small, big = frozenset({(0, 1)}), frozenset({(0, 1), (1, 2)})
    g = ColoredMultigraph(3, 2, (small, big))
    out = nest(g)
    assert sorted(out.colors, key=len) == [small, big]


def test_double_triangle_multiplicities():
    tri = frozenset(pairs(3))
    assert to_multiplicity(ColoredMultigraph(3, 2, (tri, tri))).w == (2, 2, 2)


def test_empty_graph():
    g = ColoredMultigraph(4, 3, (frozenset(),) * 3)
    assert to_multiplicity(g).w == (0,) * 6


@given(colored_graphs())
def test_nest_preserves_multiplicities_and_is_chain(g):
    out = nest(g)
    assert out.w == g.w
    cs = sorted(out.colors, key=len, reverse=True)
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            assert cs[j] <= cs[i]
    assert out.is_nested()


@given(colored_graphs())
def test_nest_idempotent(g):
    once = nest(g)
    assert nest(once).colors == once.colors


@given(colored_graphs())
def test_nest_equals_canonical_expansion(g):
    assert nest(g).colors == from_multiplicity(to_multiplicity(g)).colors


@given(multiplicity_graphs())
def test_multiplicity_round_trip(g):
    assert to_multiplicity(from_multiplicity(g)) == g


@settings(max_examples=150)
@given(colored_graphs(max_n=5, max_k=4), patterns(max_m=4, max_h=4, max_mult=2))
def test_nesting_keeps_freeness(g, H):
    colors = [set(c) for c in g.colors]
    if not has_rainbow(g.n, colors, H.m, H.w):
        nested = [set(c) for c in nest(g).colors]
        assert not has_rainbow(g.n, nested, H.m, H.w)


def test_nesting_keeps_freeness_random_sweep():
    rng = random.Random(11)
    checked = 0
    for _ in range(300):
        n, k = rng.randint(3, 6), rng.randint(2, 4)
        ps = pairs(n)
        colors = tuple(frozenset(p for p in ps if rng.random() < 0.5) for _ in range(k))
        g = ColoredMultigraph(n, k, colors)
        m = rng.randint(2, min(4, n))
        hw = [0] * len(pairs(m))
        for _ in range(rng.randint(1, 4)):
            hw[rng.randrange(len(hw))] += 1
        if not has_rainbow(n, [set(c) for c in colors], m, hw):
            checked += 1
            assert not has_rainbow(n, [set(c) for c in nest(g).colors], m, hw)
    assert checked > 10


def test_to_multiplicity_type():
    g = ColoredMultigraph(3, 1, (frozenset({(0, 2)}),))
    assert isinstance(to_multiplicity(g), MultiplicityGraph)
