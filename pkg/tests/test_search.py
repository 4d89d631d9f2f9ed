from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from oracles import max_free_bruteforce

from multituran.canon import is_isomorphic
from multituran.constructions import complete_family, turan_family
from multituran.core import MultiplicityGraph, Pattern, complete_pattern, cycle_pattern, path_pattern
from multituran.exceptions import CapabilityError, InputError
from multituran.rainbow import find_rainbow, find_rainbow_nested
from multituran.search import (
    formula_branch,
    solve_exact,
    solve_explicit_bruteforce,
    stability_probe,
    verify_goodness_formula,
)

K3 = complete_pattern(3)
P3 = path_pattern(3)
EDGE = Pattern.from_edges(2, [(0, 1)], "K2")
FAT = Pattern.from_edges(3, [(0, 1, 1), (0, 2, 2), (1, 2, 1)], "fat")


def test_degenerate_k3():
    assert solve_exact(K3, 4, 2).value == 12


@pytest.mark.parametrize("n,k", [(2, 1), (4, 3), (5, 8)])
def test_single_edge_pattern(n, k):
    rep = solve_exact(EDGE, n, k)
    assert rep.value == 0 and rep.witnesses[0].edge_count == 0


def test_pattern_larger_than_host():
    assert solve_exact(complete_pattern(4), 3, 5).value == 15


@pytest.mark.parametrize("H,n,k", [(K3, 3, 2), (K3, 4, 2), (K3, 4, 3), (P3, 4, 2), (P3, 4, 3), (FAT, 3, 3), (FAT, 4, 2)])
def test_value_matches_naive_scan(H, n, k):
    assert solve_exact(H, n, k).value == max_free_bruteforce(n, k, H.m, H.w)


@pytest.mark.parametrize("H,n,k", [(K3, 3, 3), (K3, 4, 2), (P3, 4, 2), (P3, 3, 3)])
def test_explicit_colorings_match(H, n, k):
    assert solve_explicit_bruteforce(H, n, k) == solve_exact(H, n, k).value


CASES = [(K3, 5, 3), (K3, 5, 4), (K3, 6, 4), (cycle_pattern(5), 5, 5), (FAT, 5, 4), (P3, 5, 3)]


@pytest.mark.parametrize("H,n,k", CASES)
def test_report_invariants(H, n, k):
    rep = solve_exact(H, n, k)
    assert rep.value >= max(rep.lower_bounds.values(), default=0)
    assert rep.witnesses
    for g in rep.witnesses:
        assert g.edge_count == rep.value
        assert find_rainbow_nested(g, H) is None
        assert find_rainbow(g, H) is None
    for i, a in enumerate(rep.witnesses):
        for b in rep.witnesses[i + 1:]:
            assert not is_isomorphic(a, b)


@pytest.mark.parametrize("H,n,k", CASES)
def test_pruning_and_threads_do_not_change_report(H, n, k):
    base = solve_exact(H, n, k)
    off = solve_exact(H, n, k, canonical=False)
    assert off.value == base.value
    assert [g.w for g in off.witnesses] == [g.w for g in base.witnesses]
    assert solve_exact(H, n, k, threads=2).deterministic_view() == base.deterministic_view()
    assert solve_exact(H, n, k, min_degree=True).value == base.value
    assert solve_exact(H, n, k, witnesses=False).value == base.value


def test_monotone_in_n_and_k():
    table = {(n, k): solve_exact(K3, n, k, witnesses=False).value for n in range(2, 7) for k in range(1, 6)}
    for (n, k), v in table.items():
        if (n + 1, k) in table:
            assert table[(n + 1, k)] >= v
        if (n, k + 1) in table:
            assert table[(n, k + 1)] >= v


def test_known_values():
    assert solve_exact(K3, 5, 3).value == 20
    assert solve_exact(K3, 6, 4).value == 36
    assert solve_exact(complete_pattern(4), 5, 6, witnesses=False).value == 50


def test_capability_limits():
    with pytest.raises(CapabilityError):
        solve_exact(K3, 8, 2)
    with pytest.raises(CapabilityError):
        solve_exact(K3, 4, 9)
    with pytest.raises(InputError):
        solve_exact(Pattern(3, (0, 0, 0)), 4, 2)
    with pytest.raises(CapabilityError):
        solve_explicit_bruteforce(K3, 6, 2)


def test_formula_branches():
    assert formula_branch(K3, 5, 2) == ("degenerate", 20)
    assert formula_branch(K3, 5, 3) == ("complete", 20)
    assert formula_branch(K3, 6, 4) == ("turan", 36)
    assert formula_branch(cycle_pattern(5), 6, 5) == ("complete", 60)
    two = Pattern.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert formula_branch(two, 6, 7) == (None, None)


def test_goodness_k3_at_threshold():
    res = verify_goodness_formula(K3, 6, 4)
    assert res.branch == "turan" and res.formula_value == 36
    assert res.report.value == 36
    assert res.verdict == "match"


def test_goodness_deviation_reported():
    # at n=4, k=3 both constructions reach 12 edges, so extremal graphs are not unique
    res = verify_goodness_formula(K3, 4, 3)
    assert res.report.value == 12
    assert res.verdict == "deviate"
    assert len(res.report.witnesses) == 2


def test_goodness_degenerate():
    res = verify_goodness_formula(K3, 5, 2)
    assert res.verdict == "not-applicable" and res.degenerate_ok


def test_stability_eta_zero():
    rep = stability_probe(K3, 5, 4, 0)
    assert rep.entries and rep.max_distance == 0
    for e in rep.entries:
        assert e.edges == rep.threshold
        assert e.nearest == 0


def test_stability_small_eta_table():
    rep = stability_probe(K3, 5, 4, Fraction(1, 25))
    assert rep.floor == rep.threshold - 1
    assert all(e.edges >= rep.floor for e in rep.entries)
    assert all(find_rainbow_nested(e.graph, K3) is None for e in rep.entries)


def test_stability_relabeling_invariant():
    other = FAT.relabel([2, 0, 1])
    a = stability_probe(FAT, 4, 5, Fraction(1, 8))
    b = stability_probe(other, 4, 5, Fraction(1, 8))
    assert [(e.edges, e.dist_complete, e.dist_turan) for e in a.entries] == \
           [(e.edges, e.dist_complete, e.dist_turan) for e in b.entries]


def test_stability_rejects_bad_inputs():
    with pytest.raises(InputError):
        stability_probe(cycle_pattern(5), 5, 5)
    with pytest.raises(InputError):
        stability_probe(K3, 5, 2)
    with pytest.raises(CapabilityError):
        stability_probe(K3, 6, 4)


def test_families_have_expected_relation_to_witnesses():
    rep = solve_exact(K3, 5, 3)
    assert any(is_isomorphic(g, complete_family(5, 3, 3)) for g in rep.witnesses)
    rep = solve_exact(K3, 5, 5)
    assert all(is_isomorphic(g, turan_family(5, 5, 3)) for g in rep.witnesses)


def test_witness_modes_agree_on_random_instances():
    import random
    rng = random.Random(1)
    for _ in range(8):
        m = rng.randint(2, 4)
        H = Pattern(m, tuple(rng.randint(0, 2) for _ in range(comb(m, 2))))
        if not 1 <= H.h <= 5:
            continue
        n, k = rng.randint(2, 5), rng.randint(1, 4)
        a = solve_exact(H, n, k)
        b = solve_exact(H, n, k, witnesses=False, canonical=False)
        assert a.value == b.value
        assert isinstance(a.witnesses[0], MultiplicityGraph)
