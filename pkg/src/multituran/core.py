"""Data model for simply k-colored multigraphs and target patterns.

Three representations are used throughout the package:

* :class:`ColoredMultigraph` -- ``k`` explicit simple graphs (the colors) over
  the vertex range ``0..n-1``.
* :class:`MultiplicityGraph` -- the canonical nested form, a multiplicity
  ``w(e)`` in ``0..k`` per unordered pair; an edge of multiplicity ``s`` is
  understood to carry exactly the colors ``1..s``.
* :class:`Pattern` -- the target (multi)graph ``H``.

Pair weights are stored as a tuple in lexicographic pair order
``(0,1), (0,2), ..., (0,n-1), (1,2), ...``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .exceptions import CapabilityError, InputError

Pair = tuple[int, int]

ISO_MAX_N = 8


def pairs(n: int) -> list[Pair]:
    """All unordered pairs of ``range(n)`` in lexicographic order."""
    return list(itertools.combinations(range(n), 2))


def pair_index(u: int, v: int, n: int) -> int:
    """Position of pair ``{u, v}`` in the lexicographic pair order."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def _norm_pair(u: int, v: int, n: int) -> Pair:
    if not (0 <= u < n and 0 <= v < n):
        raise InputError(f"pair ({u},{v}) out of range for {n} vertices")
    if u == v:
        raise InputError(f"loop at vertex {u} is not allowed")
    return (u, v) if u < v else (v, u)


def _weights_from_mapping(n: int, edges) -> tuple[int, ...]:
    w = [0] * comb(n, 2)
    if isinstance(edges, Mapping):
        items = edges.items()
    else:
        items = []
        for item in edges:
            if len(item) == 2:
                items.append(((item[0], item[1]), 1))
            else:
                items.append(((item[0], item[1]), item[2]))
    for (u, v), m in items:
        a, b = _norm_pair(u, v, n)
        w[pair_index(a, b, n)] += int(m)
    return tuple(w)


class _PairWeighted:
    """Accessors shared by every pair-weighted representation."""

    n: int
    w: tuple[int, ...]

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for (u, v), m in zip(pairs(n), self.w):
            rows[u][v] = rows[v][u] = m
        return tuple(tuple(r) for r in rows)

    def weight(self, u: int, v: int) -> int:
        a, b = _norm_pair(u, v, self.n)
        return self.w[pair_index(a, b, self.n)]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, w)`` for every pair of positive multiplicity."""
        for (u, v), m in zip(pairs(self.n), self.w):
            if m:
                yield u, v, m

    @property
    def edge_count(self) -> int:
        return sum(self.w)

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range")
        return sum(self.matrix[v])

    def degrees(self) -> list[int]:
        return [sum(row) for row in self.matrix]

    def support(self) -> list[list[int]]:
        """Adjacency lists of the underlying simple graph."""
        return [[u for u in range(self.n) if row[u]] for row in self.matrix]


@dataclass(frozen=True)
class MultiplicityGraph(_PairWeighted):
    """Nested simply ``k``-colored multigraph given by pair multiplicities."""

    n: int
    k: int
    w: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise InputError("n and k must be nonnegative")
        w = tuple(int(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if len(w) != comb(self.n, 2):
            raise InputError(f"expected {comb(self.n, 2)} pair weights, got {len(w)}")
        for x in w:
            if not 0 <= x <= self.k:
                raise InputError(f"multiplicity {x} outside 0..{self.k}")

    @classmethod
    def from_edges(cls, n: int, k: int, edges) -> "MultiplicityGraph":
        """Build from ``{(u, v): m}`` or an iterable of ``(u, v[, m])``."""
        return cls(n, k, _weights_from_mapping(n, edges))

    @classmethod
    def from_matrix(cls, k: int, matrix: Sequence[Sequence[int]]) -> "MultiplicityGraph":
        n = len(matrix)
        for u in range(n):
            if matrix[u][u]:
                raise InputError(f"loop at vertex {u} is not allowed")
            for v in range(u + 1, n):
                if matrix[u][v] != matrix[v][u]:
                    raise InputError("multiplicity matrix must be symmetric")
        return cls(n, k, tuple(matrix[u][v] for u, v in pairs(n)))

    @classmethod
    def empty(cls, n: int, k: int) -> "MultiplicityGraph":
        return cls(n, k, (0,) * comb(n, 2))

    def relabel(self, perm: Sequence[int]) -> "MultiplicityGraph":
        """Graph whose vertex ``i`` plays the role of old vertex ``perm[i]``."""
        m = self.matrix
        return MultiplicityGraph(self.n, self.k, tuple(m[perm[u]][perm[v]] for u, v in pairs(self.n)))

    def induced(self, vertices: Sequence[int]) -> "MultiplicityGraph":
        m = self.matrix
        vs = list(vertices)
        return MultiplicityGraph(len(vs), self.k, tuple(m[vs[a]][vs[b]] for a, b in pairs(len(vs))))


@dataclass(frozen=True)
class Pattern(_PairWeighted):
    """Target multigraph ``H`` on vertices ``0..m-1``."""

    m: int
    w: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.m < 1:
            raise InputError("a pattern needs at least one vertex")
        w = tuple(int(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if len(w) != comb(self.m, 2):
            raise InputError(f"expected {comb(self.m, 2)} pair weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise InputError("pattern multiplicities must be nonnegative")

    def __eq__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.m == other.m and self.w == other.w

    def __hash__(self):
        return hash((self.m, self.w))

    @property
    def n(self) -> int:
        return self.m

    @property
    def h(self) -> int:
        return sum(self.w)

    @classmethod
    def from_edges(cls, m: int, edges, name: str = "") -> "Pattern":
        return cls(m, _weights_from_mapping(m, edges), name)

    def relabel(self, perm: Sequence[int]) -> "Pattern":
        mat = self.matrix
        return Pattern(self.m, tuple(mat[perm[u]][perm[v]] for u, v in pairs(self.m)), self.name)

    def remove_unit(self, u: int, v: int) -> "Pattern":
        """Copy with the multiplicity of ``uv`` lowered by one."""
        i = pair_index(*_norm_pair(u, v, self.m), self.m)
        if self.w[i] == 0:
            raise InputError(f"pair ({u},{v}) carries no edge")
        w = list(self.w)
        w[i] -= 1
        return Pattern(self.m, tuple(w), self.name)

    def as_host(self, k: int | None = None) -> MultiplicityGraph:
        return MultiplicityGraph(self.m, max(self.w, default=0) if k is None else k, self.w)


@dataclass(frozen=True)
class ColoredMultigraph(_PairWeighted):
    """Explicit simple ``k``-coloring: color ``i+1`` is the edge set ``colors[i]``."""

    n: int
    k: int
    colors: tuple[frozenset, ...]

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise InputError("n and k must be nonnegative")
        if len(self.colors) != self.k:
            raise InputError(f"expected {self.k} colors, got {len(self.colors)}")
        norm = []
        for c in self.colors:
            # frozenset already forbids repeated pairs inside one color
            norm.append(frozenset(_norm_pair(u, v, self.n) for u, v in c))
        object.__setattr__(self, "colors", tuple(norm))

    @cached_property
    def w(self) -> tuple[int, ...]:
        n = self.n
        w = [0] * comb(n, 2)
        for c in self.colors:
            for u, v in c:
                w[pair_index(u, v, n)] += 1
        return tuple(w)

    @cached_property
    def color_masks(self) -> tuple[tuple[int, ...], ...]:
        """``masks[u][v]`` has bit ``i`` set iff color ``i+1`` contains ``uv``."""
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i, c in enumerate(self.colors):
            bit = 1 << i
            for u, v in c:
                rows[u][v] |= bit
                rows[v][u] |= bit
        return tuple(tuple(r) for r in rows)

    def colors_at(self, u: int, v: int) -> frozenset:
        """1-based colors present on the pair ``uv``."""
        mask = self.color_masks[u][v]
        return frozenset(i + 1 for i in range(self.k) if mask >> i & 1)

    def is_nested(self) -> bool:
        cs = sorted(self.colors, key=len, reverse=True)
        return all(cs[i + 1] <= cs[i] for i in range(len(cs) - 1))


Host = ColoredMultigraph | MultiplicityGraph


def degree_into(g, v: int, T: Iterable[int]) -> int:
    """``d_T(v)``: total multiplicity from ``v`` into the vertex set ``T``."""
    n = g.n
    if not 0 <= v < n:
        raise InputError(f"vertex {v} out of range")
    row = g.matrix[v]
    total = 0
    for u in set(T):
        if not 0 <= u < n:
            raise InputError(f"vertex {u} out of range")
        total += row[u]
    return total


def _check_turan_args(n: int, parts: int) -> None:
    if parts < 1:
        raise InputError("the Turan graph needs at least one part")
    if n < parts:
        raise InputError(f"cannot split {n} vertices into {parts} nonempty parts")


def turan_parts(n: int, parts: int) -> list[int]:
    """Part label of every vertex: vertex ``i`` goes to part ``i mod parts``."""
    _check_turan_args(n, parts)
    return [i % parts for i in range(n)]


def turan_graph(n: int, parts: int) -> MultiplicityGraph:
    """Balanced complete ``parts``-partite graph ``T_parts(n)`` (``k = 1``)."""
    lab = turan_parts(n, parts)
    return MultiplicityGraph(n, 1, tuple(int(lab[u] != lab[v]) for u, v in pairs(n)))


def turan_numbers(n: int, parts: int) -> tuple[int, int]:
    """Edge count and minimum degree of ``T_parts(n)``."""
    _check_turan_args(n, parts)
    q, rem = divmod(n, parts)
    sizes = [q + 1] * rem + [q] * (parts - rem)
    t = (n * n - sum(s * s for s in sizes)) // 2
    return t, n - max(sizes)


class HeavyNeighbor(NamedTuple):
    vertex: int
    degree: int
    meets_threshold: bool


def heavy_neighbor(g, T: Iterable[int], d=0) -> HeavyNeighbor | None:
    """Vertex outside ``T`` with the largest ``d_T``; smallest id on ties.

    ``meets_threshold`` reports whether ``d_T(v) >= d*|T|``. Returns ``None``
    when ``T`` already covers every vertex.
    """
    T = set(T)
    if not T:
        raise InputError("T must be nonempty")
    for u in T:
        if not 0 <= u < g.n:
            raise InputError(f"vertex {u} out of range")
    best = None
    for v in range(g.n):
        if v in T:
            continue
        dv = degree_into(g, v, T)
        if best is None or dv > best[1]:
            best = (v, dv)
    if best is None:
        return None
    return HeavyNeighbor(best[0], best[1], best[1] >= Fraction(d) * len(T))


def symmetric_difference(g1, g2, upto_iso: bool = False) -> int:
    """Total multiplicity change turning ``g1`` into ``g2``.

    With ``upto_iso`` the minimum is taken over all vertex bijections (exact
    permutation search, ``n <= 8``).
    """
    if g1.n != g2.n:
        raise InputError(f"size mismatch: {g1.n} vs {g2.n} vertices")
    if not upto_iso:
        return sum(abs(a - b) for a, b in zip(g1.w, g2.w))
    n = g1.n
    if n > ISO_MAX_N:
        raise CapabilityError(f"isomorphism-mode distance supports n <= {ISO_MAX_N}")
    a, b = g1.matrix, g2.matrix
    best = [sum(g1.w) + sum(g2.w) + 1]
    perm = [0] * n
    used = [False] * n

    # branch and bound over bijections, cost accumulated vertex by vertex
    def extend(j: int, cost: int) -> None:
        if cost >= best[0]:
            return
        if j == n:
            best[0] = cost
            return
        arow = a[j]
        for x in range(n):
            if used[x]:
                continue
            brow = b[x]
            c = cost
            for i in range(j):
                c += abs(arow[i] - brow[perm[i]])
            used[x] = True
            perm[j] = x
            extend(j + 1, c)
            used[x] = False

    extend(0, 0)
    return best[0]


def complete_pattern(r: int) -> Pattern:
    return Pattern(r, (1,) * comb(r, 2), f"K{r}")


def cycle_pattern(m: int) -> Pattern:
    if m < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Pattern.from_edges(m, [(i, (i + 1) % m) for i in range(m)], f"C{m}")


def path_pattern(m: int) -> Pattern:
    """Path on ``m`` vertices (``m-1`` edges)."""
    return Pattern.from_edges(m, [(i, i + 1) for i in range(m - 1)], f"P{m}")


def disjoint_triangles() -> Pattern:
    return Pattern.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], "2K3")
