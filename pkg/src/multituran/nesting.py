"""Conversion between explicit and nested simple k-colorings.

Replacing two incomparable colors ``G_i, G_j`` by ``G_i & G_j`` and
``G_i | G_j`` keeps every pair multiplicity and never creates a multicolored
copy of a pattern that was absent before.  Repeating it until the colors form
a chain terminates because ``sum |G_i|^2`` strictly increases.
"""
from __future__ import annotations

from .core import ColoredMultigraph, MultiplicityGraph, pairs


def nest(g: ColoredMultigraph) -> ColoredMultigraph:
    """Chain-ordered coloring with the same multiplicities as ``g``.

    Color pairs are swept in ascending ``(i, j)`` order until a sweep makes
    no change; slot ``i`` receives the intersection, slot ``j`` the union.
    Colors are finally sorted by decreasing size (empty colors last), so
    color ``s`` is exactly the set of pairs of multiplicity at least ``s``.
    """
    colors = list(g.colors)
    k = len(colors)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                a, b = colors[i], colors[j]
                if a <= b or b <= a:
                    continue
                colors[i], colors[j] = a & b, a | b
                changed = True
    colors.sort(key=len, reverse=True)
    return ColoredMultigraph(g.n, g.k, tuple(colors))


def from_multiplicity(g: MultiplicityGraph) -> ColoredMultigraph:
    """Explicit nested coloring: color ``s`` holds the pairs with ``w >= s``."""
    ps = pairs(g.n)
    colors = tuple(frozenset(p for p, w in zip(ps, g.w) if w >= s) for s in range(1, g.k + 1))
    return ColoredMultigraph(g.n, g.k, colors)


def to_multiplicity(g: ColoredMultigraph) -> MultiplicityGraph:
    """Canonical nested representative of ``g``.

    Multiplicities do not depend on the coloring, so no transformation is
    needed to read them off; ``from_multiplicity`` of the result equals
    ``nest(g)``.
    """
    return MultiplicityGraph(g.n, g.k, g.w)
