"""Canonical labelings for small multigraphs.

The canonical labeling of a graph is the relabeling that maximizes its
*colex string*: the multiplicities read column by column,
``w(0,1), w(0,2), w(1,2), w(0,3), ...``.  Because the string of the first
``j`` vertices is a prefix of the string of the first ``j+1``, deleting the
last vertex of a canonical graph leaves a canonical graph.  That property
makes vertex-by-vertex generation orderly: a search that only extends
canonical prefixes still reaches every isomorphism class, each exactly once
when the leaves are also required to be canonical.

All routines take a square multiplicity matrix (list or tuple of rows).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

Matrix = Sequence[Sequence[int]]


def colex_string(mat: Matrix, perm: Sequence[int] | None = None) -> tuple[int, ...]:
    n = len(mat)
    p = range(n) if perm is None else perm
    return tuple(mat[p[i]][p[j]] for j in range(1, n) for i in range(j))


def is_canonical(mat: Matrix) -> bool:
    """True iff no relabeling yields a lexicographically larger colex string."""
    return _is_canonical(tuple(tuple(r) for r in mat))


@lru_cache(maxsize=1 << 16)
def _is_canonical(mat: tuple[tuple[int, ...], ...]) -> bool:
    n = len(mat)
    perm = [0] * n
    used = [False] * n

    def beats(j: int) -> bool:
        for x in range(n):
            if used[x]:
                continue
            row = mat[x]
            cmp = 0
            for i in range(j):
                a = row[perm[i]]
                b = mat[i][j]
                if a != b:
                    cmp = 1 if a > b else -1
                    break
            if cmp < 0:
                continue
            if cmp > 0:
                return True
            if j + 1 < n:
                used[x] = True
                perm[j] = x
                if beats(j + 1):
                    used[x] = False
                    return True
                used[x] = False
        return False

    return not beats(0)


def canonical_labeling(mat: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(perm, string)`` with ``string`` the maximal colex string.

    ``perm[i]`` is the old vertex placed at new position ``i``.
    """
    n = len(mat)
    if n == 0:
        return (), ()
    perm = [0] * n
    used = [False] * n
    best: list[tuple[int, ...]] = []
    best_perm: list[list[int] | None] = [None]

    def rec(j: int) -> None:
        if j == n:
            if best_perm[0] is None:
                best_perm[0] = perm[:]
            return
        for x in range(n):
            if used[x]:
                continue
            row = mat[x]
            blk = tuple(row[perm[i]] for i in range(j))
            if len(best) > j:
                if blk < best[j]:
                    continue
                if blk > best[j]:
                    del best[j:]
                    best.append(blk)
                    best_perm[0] = None
            else:
                best.append(blk)
            used[x] = True
            perm[j] = x
            rec(j + 1)
            used[x] = False

    rec(0)
    string = tuple(v for blk in best for v in blk)
    return tuple(best_perm[0]), string


def canonical_key(g) -> tuple:
    """Isomorphism invariant key of a pair-weighted graph (``k`` is ignored)."""
    return (g.n, canonical_labeling(g.matrix)[1])


def canonical_form(g):
    """Relabeled copy of ``g`` in canonical labeling."""
    perm, _ = canonical_labeling(g.matrix)
    return g.relabel(perm)


def is_isomorphic(g1, g2) -> bool:
    return g1.n == g2.n and sorted(g1.w) == sorted(g2.w) and canonical_key(g1) == canonical_key(g2)


def automorphism_count(mat: Matrix) -> int:
    n = len(mat)
    perm = [0] * n
    used = [False] * n

    def rec(j: int) -> int:
        if j == n:
            return 1
        total = 0
        for x in range(n):
            if used[x]:
                continue
            row = mat[x]
            if all(row[perm[i]] == mat[i][j] for i in range(j)):
                used[x] = True
                perm[j] = x
                total += rec(j + 1)
                used[x] = False
        return total

    return rec(0)


def orderly_graphs(n: int, values: Sequence[int] = (0, 1)) -> Iterator[tuple[tuple[int, ...], ...]]:
    """One canonical matrix per isomorphism class of complete pair-labelings.

    Pair labels range over ``values``; ``(0, 1)`` gives simple graphs.
    """
    if n == 0:
        yield ()
        return
    level = [((0,),)]
    for j in range(1, n):
        nxt = []
        for mat in level:
            for col in product(values, repeat=j):
                rows = [list(r) + [col[i]] for i, r in enumerate(mat)]
                rows.append(list(col) + [0])
                cand = tuple(tuple(r) for r in rows)
                if _is_canonical(cand):
                    nxt.append(cand)
        level = nxt
    yield from level
