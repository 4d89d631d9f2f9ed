from __future__ import annotations

import random

import pytest
from oracles import chromatic, critical_edge_list, labeled_graphs

from multituran.census import census, classify, sample_partite_plus_edge
from multituran.core import Pattern
from multituran.criticality import chromatic_number
from multituran.exceptions import CapabilityError, InputError


def labeled_counts(r, s):
    chi_r = crit = 0
    for w in labeled_graphs(s):
        if chromatic(s, w) != r:
            continue
        chi_r += 1
        crit += bool(critical_edge_list(s, w))
    return chi_r, crit


def test_r3_s3_only_triangle():
    t = census(3, 3)
    assert t.color_critical == 1 and t.classes == 1
    assert t.rows[0].pattern.h == 3


@pytest.mark.parametrize("r,s", [(3, 4), (3, 5), (4, 4), (4, 5)])
def test_counts_match_labeled_bruteforce(r, s):
    t = census(r, s)
    assert (t.chi_r, t.color_critical) == labeled_counts(r, s)
    assert t.total == 2 ** (s * (s - 1) // 2)


def test_known_r3_counts():
    assert census(3, 4).color_critical == 22
    assert census(3, 5).color_critical == 492


@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_reduced_graphs_critical_and_conserving(s):
    t = census(3, s)
    assert t.hc_ok == t.color_critical
    for row in t.rows:
        assert row.hc_critical and row.hc_conserving


def test_fraction_reported():
    t = census(3, 5)
    assert 0 <= t.fr_fraction <= 1


def test_sampled_census_is_reproducible():
    a = census(5, 6, samples=40, seed=3)
    b = census(5, 6, samples=40, seed=3)
    assert a.mode == "sampled" and a.total == 40
    assert (a.chi_r, a.color_critical, a.in_Fr) == (b.chi_r, b.color_critical, b.in_Fr)


def test_sample_shape():
    rng = random.Random(0)
    for _ in range(30):
        H = sample_partite_plus_edge(5, 8, rng)
        assert H.m == 8
        assert chromatic_number(H) <= 5


def test_classify_non_critical():
    two = Pattern.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not classify(two, 3).color_critical


def test_census_limits():
    with pytest.raises(InputError):
        census(2, 4)
    with pytest.raises(CapabilityError):
        census(3, 9)
    with pytest.raises(CapabilityError):
        census(6, 6)
    with pytest.raises(CapabilityError):
        census(5, 4)
