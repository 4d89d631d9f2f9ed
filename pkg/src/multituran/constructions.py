"""Extremal candidate families, all emitted in nested multiplicity form."""
from __future__ import annotations

from .core import MultiplicityGraph, pairs
from .exceptions import InputError


def _same_part(n: int, parts: int):
    return [(u % parts) == (v % parts) for u, v in pairs(n)]


def complete_family(n: int, h: int, k: int | None = None) -> MultiplicityGraph:
    """``(h-1)K_n``: every pair has multiplicity ``h-1``.

    ``k`` is the color budget recorded on the result (defaults to
    ``max(h-1, 1)``) and must be at least ``h-1``.
    """
    if h < 1:
        raise InputError("h must be at least 1")
    if n < 1:
        raise InputError("n must be at least 1")
    k = max(h - 1, 1) if k is None else k
    if k < h - 1:
        raise InputError(f"color budget k={k} is below h-1={h - 1}")
    return MultiplicityGraph(n, k, tuple([h - 1] * (n * (n - 1) // 2)))


def _check(n: int, k: int, r: int) -> None:
    if r < 3:
        raise InputError("r must be at least 3")
    if k < 1:
        raise InputError("k must be at least 1")
    if n < 1:
        raise InputError("n must be at least 1")


def turan_family(n: int, k: int, r: int) -> MultiplicityGraph:
    """``k`` identical layers of ``T_{r-1}(n)``."""
    _check(n, k, r)
    same = _same_part(n, r - 1)
    return MultiplicityGraph(n, k, tuple(0 if s else k for s in same))


def hybrid_family(n: int, k: int, r: int) -> MultiplicityGraph:
    """``k-1`` layers of ``T_{r-1}(n)`` plus one layer of ``K_n``."""
    _check(n, k, r)
    same = _same_part(n, r - 1)
    return MultiplicityGraph(n, k, tuple(1 if s else k for s in same))


def mixed_family(n: int, k: int, r: int, m_cut: int) -> MultiplicityGraph:
    """``(m_cut-1)K_n`` plus ``k-m_cut+1`` layers of ``T_{r-1}(n)``."""
    _check(n, k, r)
    if not 1 <= m_cut <= k:
        raise InputError("m_cut must satisfy 1 <= m_cut <= k")
    same = _same_part(n, r - 1)
    base = m_cut - 1
    return MultiplicityGraph(n, k, tuple(base if s else k for s in same))


FAMILIES = {
    "complete": complete_family,
    "turan": turan_family,
    "hybrid": hybrid_family,
    "mixed": mixed_family,
}
