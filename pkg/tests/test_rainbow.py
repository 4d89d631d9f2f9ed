from __future__ import annotations

import random
from math import comb

import pytest
from conftest import colored_graphs, multiplicity_graphs, patterns
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import has_rainbow, nested_colors

from multituran.core import (
    ColoredMultigraph,
    MultiplicityGraph,
    Pattern,
    complete_pattern,
    cycle_pattern,
    pairs,
)
from multituran.exceptions import InputError
from multituran.nesting import from_multiplicity
from multituran.rainbow import (
    EmbeddingCertificate,
    find_rainbow,
    find_rainbow_nested,
    verify_certificate,
)


def kn(n, m, k=None):
    return MultiplicityGraph(n, m if k is None else k, (m,) * comb(n, 2))


K3 = complete_pattern(3)


def test_triple_triangle_contains_k3():
    cert = find_rainbow(kn(3, 3), K3)
    assert cert is not None and verify_certificate(kn(3, 3), K3, cert)
    cert = find_rainbow_nested(kn(3, 3), K3)
    assert cert.prefix_sums == (1, 2, 3)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_double_complete_is_k3_free(n):
    assert find_rainbow(kn(n, 2), K3) is None
    assert find_rainbow_nested(kn(n, 2), K3) is None


@pytest.mark.parametrize("H", [complete_pattern(3), cycle_pattern(5), complete_pattern(4),
                               Pattern.from_edges(3, [(0, 1, 2), (1, 2, 1)])])
def test_h_minus_one_complete_is_free(H):
    g = kn(H.m, H.h - 1)
    assert find_rainbow_nested(g, H) is None
    assert find_rainbow(g, H) is None


@given(patterns(), st.integers(0, 2))
def test_full_host_always_contains(H, extra):
    g = kn(H.m + extra, H.h)
    cert = find_rainbow_nested(g, H)
    assert cert is not None and verify_certificate(g, H, cert)


def test_heavy_pair_plus_clique():
    # one pair of multiplicity h, the rest h-1: the heaviest H pair goes last
    H = cycle_pattern(5)
    w = [H.h - 1] * comb(5, 2)
    w[0] = H.h
    g = MultiplicityGraph(5, H.h, tuple(w))
    cert = find_rainbow_nested(g, H)
    assert cert is not None and verify_certificate(g, H, cert)
    assert has_rainbow(5, nested_colors(5, H.h, w), H.m, H.w)


def test_single_edge_pattern():
    H = Pattern.from_edges(2, [(0, 1)])
    g = MultiplicityGraph.from_edges(4, 1, [(2, 3, 1)])
    assert find_rainbow_nested(g, H) is not None
    assert find_rainbow(g, H) is not None
    assert find_rainbow(MultiplicityGraph.empty(4, 1), H) is None


def test_pattern_larger_than_host():
    assert find_rainbow(kn(2, 5), K3) is None
    assert find_rainbow_nested(kn(2, 5), K3) is None


def test_nested_search_rejects_unnested_coloring():
    g = ColoredMultigraph(3, 2, (frozenset({(0, 1)}), frozenset({(1, 2)})))
    with pytest.raises(InputError):
        find_rainbow_nested(g, K3)


def test_duplicate_color_rejected():
    g = kn(3, 3)
    bad = EmbeddingCertificate(phi=(0, 1, 2), colors={(0, 1): (1,), (0, 2): (1,), (1, 2): (3,)})
    chk = verify_certificate(g, K3, bad)
    assert not chk and chk.reason == "duplicate-color"


def test_prefix_overflow_reason_from_swapped_order():
    H = Pattern.from_edges(3, [(0, 1, 1), (1, 2, 2)])
    g = MultiplicityGraph.from_edges(3, 3, [(0, 1, 1), (1, 2, 3)])
    cert = find_rainbow_nested(g, H)
    assert cert is not None and verify_certificate(g, H, cert)
    swapped = EmbeddingCertificate(cert.phi, tuple(reversed(cert.order)))
    chk = verify_certificate(g, H, swapped)
    assert chk.reason == "prefix-overflow:2"


def test_verify_rejects_malformed():
    g = kn(3, 3)
    assert verify_certificate(g, K3, EmbeddingCertificate(phi=(0, 1))).reason == "phi-length"
    assert verify_certificate(g, K3, EmbeddingCertificate(phi=(0, 0, 1), order=())).reason == "phi-not-injective"
    assert verify_certificate(g, K3, EmbeddingCertificate(phi=(0, 1, 9), order=())).reason == "phi-out-of-range"
    assert verify_certificate(g, K3, EmbeddingCertificate(phi=(0, 1, 2), order=((0, 1),))).reason == "order-incomplete"
    weak = kn(3, 0, 3)
    assert not verify_certificate(weak, K3, EmbeddingCertificate(phi=(0, 1, 2), order=tuple(pairs(3))))


def test_order_certificate_refused_on_unnested_coloring():
    g = ColoredMultigraph(3, 3, (frozenset({(0, 1)}), frozenset({(1, 2)}), frozenset({(0, 2)})))
    cert = EmbeddingCertificate(phi=(0, 1, 2), order=tuple(pairs(3)))
    assert verify_certificate(g, K3, cert).reason == "host-not-nested"
    colors = find_rainbow(g, K3)
    assert colors is not None and verify_certificate(g, K3, colors)


@settings(max_examples=120)
@given(colored_graphs(max_n=5, max_k=4), patterns(max_m=4, max_h=5, max_mult=2))
def test_matching_detector_matches_bruteforce(g, H):
    cert = find_rainbow(g, H)
    expected = has_rainbow(g.n, [set(c) for c in g.colors], H.m, H.w)
    assert (cert is not None) == expected
    if cert is not None:
        assert verify_certificate(g, H, cert)


@settings(max_examples=120)
@given(multiplicity_graphs(max_n=6, max_k=5), patterns())
def test_prefix_criterion_matches_matching(g, H):
    a = find_rainbow_nested(g, H)
    b = find_rainbow(from_multiplicity(g), H)
    assert (a is None) == (b is None)
    if a is not None:
        assert verify_certificate(g, H, a)
        assert verify_certificate(from_multiplicity(g), H, b)


@given(multiplicity_graphs(max_n=6, max_k=5), patterns(), st.data())
def test_monotone_in_host(g, H, data):
    bumped = tuple(min(g.k, x + data.draw(st.integers(0, 2))) for x in g.w)
    if find_rainbow_nested(g, H) is not None:
        assert find_rainbow_nested(MultiplicityGraph(g.n, g.k, bumped), H) is not None


@given(multiplicity_graphs(max_n=6, max_k=5), patterns(), st.data())
def test_antimonotone_in_pattern(g, H, data):
    smaller = tuple(max(0, x - data.draw(st.integers(0, 2))) for x in H.w)
    if any(smaller) and find_rainbow_nested(g, H) is not None:
        assert find_rainbow_nested(g, Pattern(H.m, smaller)) is not None


def test_through_restricts_to_vertex():
    g = MultiplicityGraph.from_edges(5, 3, [(0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert find_rainbow_nested(g, K3, through=0) is not None
    assert find_rainbow_nested(g, K3, through=4) is None


def test_random_nested_agreement_sweep():
    rng = random.Random(3)
    for _ in range(200):
        n, k = rng.randint(2, 6), rng.randint(1, 5)
        g = MultiplicityGraph(n, k, tuple(rng.randint(0, k) for _ in range(comb(n, 2))))
        m = rng.randint(2, 4)
        H = Pattern(m, tuple(rng.randint(0, 2) for _ in range(comb(m, 2))))
        if H.h == 0:
            continue
        assert (find_rainbow_nested(g, H) is None) == (find_rainbow(from_multiplicity(g), H) is None)
