"""Census of color-critical graphs on few vertices.

For ``r <= 4`` every labeled simple graph on ``s <= 8`` vertices is covered:
isomorphism classes come from orderly generation and are weighted by
``s! / |Aut|``.  For ``r = 5`` graphs are sampled from the family obtained by
taking a random balanced ``(r-1)``-partite graph (cross pairs with
probability 1/2) and adding one random edge inside the first part.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .canon import automorphism_count, orderly_graphs
from .core import Pattern, pairs, turan_parts
from .criticality import chromatic_number, critical_edges, proper_partitions, reduce_minmax
from .exceptions import CapabilityError, InputError

CENSUS_MAX_S = 8
SAMPLE_MAX_S = 12


@dataclass
class CensusRow:
    """Classification of one graph (one isomorphism class when exhaustive)."""

    pattern: Pattern
    weight: int  # labeled copies represented
    color_critical: bool
    in_Fr: bool = False
    hc_critical: bool = False
    hc_conserving: bool = False
    unique_partition: bool = False
    max_mult: int | None = None


@dataclass
class CensusTable:
    r: int
    s: int
    mode: str  # "exhaustive" | "sampled"
    total: int  # labeled graphs (or samples) scanned
    chi_r: int = 0
    color_critical: int = 0
    in_Fr: int = 0
    hc_ok: int = 0
    unique_partition: int = 0
    classes: int = 0
    rows: list = field(default_factory=list)

    @property
    def fr_fraction(self) -> Fraction | None:
        return Fraction(self.in_Fr, self.color_critical) if self.color_critical else None


def unique_partition_after_removal(H: Pattern, crit=None) -> bool:
    """Some critical edge leaves a graph with exactly one ``(r-1)``-partition."""
    r = chromatic_number(H)
    crit = critical_edges(H) if crit is None else crit
    for x, y in crit:
        G = H.remove_unit(x, y)
        count = 0
        for _ in proper_partitions(G, r - 1):
            count += 1
            if count > 1:
                break
        if count == 1:
            return True
    return False


def classify(H: Pattern, r: int, weight: int = 1) -> CensusRow:
    crit = critical_edges(H)
    if chromatic_number(H) != r or not crit:
        return CensusRow(H, weight, False)
    rep = reduce_minmax(H)
    hc = rep.reduced
    hc_crit = hc is not None and chromatic_number(hc) == r and bool(critical_edges(hc))
    hc_cons = hc is not None and hc.h == H.h
    return CensusRow(H, weight, True, rep.in_Fr, hc_crit, hc_cons,
                     unique_partition_after_removal(H, crit), rep.max_mult)


def _tally(table: CensusTable, row: CensusRow, chi: int) -> None:
    if chi == table.r:
        table.chi_r += row.weight
    if not row.color_critical:
        return
    table.rows.append(row)
    table.color_critical += row.weight
    table.in_Fr += row.weight * row.in_Fr
    table.hc_ok += row.weight * (row.hc_critical and row.hc_conserving)
    table.unique_partition += row.weight * row.unique_partition


def sample_partite_plus_edge(r: int, s: int, rng: random.Random) -> Pattern:
    """One draw: balanced parts, one random pair inside part 0, cross pairs with p = 1/2."""
    sizes = sorted(turan_parts(s, r - 1), reverse=True)
    part = []
    for i, c in enumerate(sizes):
        part.extend([i] * c)
    inside = [(u, v) for u, v in pairs(s) if part[u] == part[v] == 0]
    extra = rng.choice(inside)
    edges = [(u, v) for u, v in pairs(s) if part[u] != part[v] and rng.random() < 0.5]
    edges.append(extra)
    return Pattern.from_edges(s, edges)


def census(r: int, s: int, samples: int = 200, seed: int = 0) -> CensusTable:
    """Count ``r``-color-critical graphs on ``s`` vertices and how many lie in ``F_r``."""
    if r < 3:
        raise InputError("census needs r >= 3")
    if s < 1:
        raise InputError("census needs s >= 1")
    if r <= 4:
        if s > CENSUS_MAX_S:
            raise CapabilityError(f"exhaustive census supports s <= {CENSUS_MAX_S}")
        table = CensusTable(r, s, "exhaustive", 2 ** comb(s, 2))
        for mat in orderly_graphs(s):
            H = Pattern(s, tuple(mat[u][v] for u, v in pairs(s)))
            weight = factorial(s) // automorphism_count(mat)
            chi = chromatic_number(H)
            table.classes += chi == r and bool(critical_edges(H))
            _tally(table, classify(H, r, weight) if chi == r else CensusRow(H, weight, False), chi)
        return table
    if r == 5:
        if s > SAMPLE_MAX_S or s < r:
            raise CapabilityError(f"sampled census supports {r} <= s <= {SAMPLE_MAX_S}")
        rng = random.Random(seed)
        table = CensusTable(r, s, "sampled", samples)
        for _ in range(samples):
            H = sample_partite_plus_edge(r, s, rng)
            _tally(table, classify(H, r), chromatic_number(H))
        table.classes = len(table.rows)
        return table
    raise CapabilityError("census is available for r <= 5")
