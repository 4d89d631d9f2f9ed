"""Chromatic structure of patterns: critical edges, critical colorings, H_c.

A proper ``r``-coloring with classes ``V_1..V_r`` is *critical* when some two
classes are joined by exactly one edge.  Collapsing each class of a critical
coloring to a vertex gives an ``r``-vertex multigraph whose pair
multiplicities are the class-to-class edge counts; ``H_c`` is such a
collapse whose largest multiplicity is as small as possible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Pair, Pattern, pairs
from .exceptions import CapabilityError, InputError

CHI_MAX_M = 16
REDUCE_MAX_M = 12


def _adjacency_masks(H: Pattern) -> list[int]:
    masks = [0] * H.m
    for x, y, _ in H.edges():
        masks[x] |= 1 << y
        masks[y] |= 1 << x
    return masks


def _colorable(masks: list[int], c: int) -> bool:
    m = len(masks)
    order = sorted(range(m), key=lambda v: -bin(masks[v]).count("1"))
    color = [-1] * m

    def rec(i: int, used: int) -> bool:
        if i == m:
            return True
        v = order[i]
        banned = 0
        nb = masks[v]
        for u in range(m):
            if nb >> u & 1 and color[u] >= 0:
                banned |= 1 << color[u]
        # a fresh color is interchangeable with any other fresh one
        for col in range(min(used + 1, c)):
            if banned >> col & 1:
                continue
            color[v] = col
            if rec(i + 1, max(used, col + 1)):
                return True
        color[v] = -1
        return False

    return rec(0, 0)


def _chi_masks(masks: list[int]) -> int:
    if not any(masks):
        return 1 if masks else 0
    c = 2
    while not _colorable(masks, c):
        c += 1
    return c


def chromatic_number(H: Pattern) -> int:
    """Exact chromatic number of the underlying simple graph (``m <= 16``)."""
    if H.m > CHI_MAX_M:
        raise CapabilityError(f"chromatic number supports m <= {CHI_MAX_M}")
    return _chi_masks(_adjacency_masks(H))


def critical_edges(H: Pattern) -> list[Pair]:
    """Pairs whose loss of one unit of multiplicity lowers the chromatic number.

    Only pairs of multiplicity 1 can qualify: otherwise adjacency survives.
    """
    if H.m > CHI_MAX_M:
        raise CapabilityError(f"critical edges support m <= {CHI_MAX_M}")
    masks = _adjacency_masks(H)
    chi = _chi_masks(masks)
    out = []
    for x, y, w in H.edges():
        if w != 1:
            continue
        masks[x] ^= 1 << y
        masks[y] ^= 1 << x
        if _chi_masks(masks) == chi - 1:
            out.append((x, y))
        masks[x] ^= 1 << y
        masks[y] ^= 1 << x
    return out


def proper_partitions(H: Pattern, r: int):
    """Yield every partition into exactly ``r`` nonempty independent sets.

    Each partition appears once, encoded as a restricted growth string
    (vertex 0 in class 0, classes numbered by first appearance).
    """
    m = H.m
    masks = _adjacency_masks(H)
    lab = [-1] * m

    def rec(v: int, used: int):
        if m - v < r - used:
            return
        if v == m:
            if used == r:
                yield tuple(lab)
            return
        nb = masks[v]
        for c in range(min(used + 1, r)):
            if any(nb >> u & 1 and lab[u] == c for u in range(v)):
                continue
            lab[v] = c
            yield from rec(v + 1, max(used, c + 1))
        lab[v] = -1

    yield from rec(0, 0)


def _class_weights(H: Pattern, lab: Sequence[int], r: int) -> list[list[int]]:
    cw = [[0] * r for _ in range(r)]
    for x, y, w in H.edges():
        a, b = lab[x], lab[y]
        cw[a][b] += w
        cw[b][a] += w
    return cw


def _is_critical_coloring(cw: list[list[int]], r: int) -> bool:
    return any(cw[i][j] == 1 for i in range(r) for j in range(i + 1, r))


def _labels_from(H: Pattern, f) -> list[int]:
    f = list(f)
    if f and not isinstance(f[0], int):
        lab = [-1] * H.m
        for c, cls in enumerate(f):
            for v in cls:
                if not 0 <= v < H.m or lab[v] >= 0:
                    raise InputError("coloring classes must partition the vertex set")
                lab[v] = c
        if -1 in lab:
            raise InputError("coloring classes must cover every vertex")
        return lab
    if len(f) != H.m:
        raise InputError(f"coloring must label all {H.m} vertices")
    names = sorted(set(f))
    if names != list(range(len(names))):
        raise InputError("class labels must be 0..r-1")
    return f


def color_reduced(H: Pattern, f) -> Pattern:
    """Class-collapse ``H^f`` for a critical coloring ``f``.

    ``f`` is either a class label per vertex (labels ``0..r-1``) or a sequence
    of vertex classes; class ``i`` becomes vertex ``i``.
    """
    lab = _labels_from(H, f)
    r = max(lab) + 1
    for x, y, _ in H.edges():
        if lab[x] == lab[y]:
            raise InputError(f"coloring is not proper: edge ({x},{y}) inside a class")
    if r != chromatic_number(H):
        raise InputError(f"coloring uses {r} classes but chi(H) = {chromatic_number(H)}")
    cw = _class_weights(H, lab, r)
    if not _is_critical_coloring(cw, r):
        raise InputError("no two classes are joined by exactly one edge")
    return Pattern(r, tuple(cw[i][j] for i, j in pairs(r)), f"{H.name}^f" if H.name else "")


def k_star(r: int, h: int) -> Fraction:
    """Crossover ``(r-1)(h-1)/(r-2)`` between the two natural constructions."""
    if r < 3:
        raise InputError("k* is defined for r >= 3")
    return Fraction((r - 1) * (h - 1), r - 2)


def alpha(r: int) -> Fraction:
    """Per-pair multiplicity budget factor ``(2 + 2/r^2)/((r-1)(r-2))``."""
    if r < 3:
        raise InputError("alpha_r is defined for r >= 3")
    return (2 + Fraction(2, r * r)) / ((r - 1) * (r - 2))


@dataclass(frozen=True)
class CriticalityReport:
    chi: int
    h: int
    critical_edges: tuple[Pair, ...]
    is_color_critical: bool
    critical_coloring: tuple[int, ...] | None
    reduced: Pattern | None
    max_mult: int | None
    k_star: Fraction | None
    alpha_r: Fraction | None
    in_Fr: bool
    n_critical_colorings: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def fr_bound(self) -> Fraction | None:
        return None if self.alpha_r is None else self.alpha_r * (self.h - 1)


def critical_colorings(H: Pattern):
    """Yield ``(rgs, class_weights)`` for every critical coloring of ``H``."""
    r = chromatic_number(H)
    for lab in proper_partitions(H, r):
        cw = _class_weights(H, lab, r)
        if _is_critical_coloring(cw, r):
            yield lab, cw


def reduce_minmax(H: Pattern) -> CriticalityReport:
    """Full chromatic report; ``H_c`` minimizes the largest multiplicity.

    Ties go to the lexicographically smallest descending-sorted multiplicity
    vector, then to the smallest restricted growth string of the coloring.
    """
    if H.m > REDUCE_MAX_M:
        raise CapabilityError(f"critical-coloring enumeration supports m <= {REDUCE_MAX_M}")
    chi = chromatic_number(H)
    crit = tuple(critical_edges(H))
    cc = bool(crit)
    ks = k_star(chi, H.h) if chi >= 3 else None
    al = alpha(chi) if chi >= 3 else None
    notes = []
    if chi < 5:
        notes.append("F_r membership is informational for r < 5")
    if not cc:
        return CriticalityReport(chi, H.h, crit, False, None, None, None, ks, al, False, 0, tuple(notes))
    best = None
    count = 0
    for lab, cw in critical_colorings(H):
        count += 1
        vec = sorted((cw[i][j] for i, j in pairs(chi)), reverse=True)
        key = (vec[0] if vec else 0, tuple(vec), lab)
        if best is None or key < best[0]:
            best = (key, lab)
    if best is None:
        notes.append("color-critical but no critical coloring found")
        return CriticalityReport(chi, H.h, crit, True, None, None, None, ks, al, False, 0, tuple(notes))
    lab = best[1]
    reduced = color_reduced(H, lab)
    mm = max(reduced.w, default=0)
    in_fr = al is not None and mm <= al * (H.h - 1)
    return CriticalityReport(chi, H.h, crit, True, lab, reduced, mm, ks, al, in_fr, count, tuple(notes))
