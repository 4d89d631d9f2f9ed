"""Multicolored (rainbow) copies of a pattern in a simply k-colored host.

Two exact deciders are provided.  :func:`find_rainbow` works on any explicit
coloring: it enumerates embeddings and solves a bipartite matching between
the edge slots of ``H`` (a pair of multiplicity ``s`` contributes ``s``
slots) and the colors present on the image pairs.  :func:`find_rainbow_nested`
works on nested hosts, where the colors on a pair form an initial segment of
a chain; there a matching exists iff the slots, sorted by host multiplicity,
satisfy the prefix condition ``sum_{i<=j} w_H(e_i) <= w_G(phi(e_j))``.

Both return an :class:`EmbeddingCertificate` that
:func:`verify_certificate` re-checks from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence

from .core import ColoredMultigraph, MultiplicityGraph, Pattern, Pair, pairs
from .exceptions import InputError


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Injection ``phi`` of ``V(H)`` into the host plus evidence of distinct colors.

    Exactly one of ``order`` (a proper edge embedding order over the pairs of
    ``H`` with positive multiplicity, nested hosts only) or ``colors`` (the
    1-based colors used by every pair of ``H``) is set.
    """

    phi: tuple[int, ...]
    order: tuple[Pair, ...] | None = None
    prefix_sums: tuple[int, ...] | None = None
    colors: Mapping[Pair, tuple[int, ...]] | None = field(default=None, hash=False, compare=False)

    @property
    def kind(self) -> str:
        return "order" if self.order is not None else "colors"


class CertificateCheck(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class PatternPlan:
    """Precomputed search layout for one pattern."""

    def __init__(self, H: Pattern):
        self.H = H
        self.m = H.m
        self.mat = H.matrix
        self.deg = H.degrees()
        self.positive = [(x, y, w) for (x, y), w in zip(pairs(H.m), H.w) if w]
        self._layouts: dict[tuple[int, ...], tuple] = {}
        self.pin_reps = self._pin_representatives()

    def _pin_representatives(self) -> list[tuple[int, int]]:
        """One oriented positive pair per orbit of the automorphism group.

        A copy sending ``(x, y)`` onto a host pair can be composed with an
        automorphism, so pinning one pair per orbit covers all copies.
        """
        autos = _automorphisms(self.mat)
        seen: set[tuple[int, int]] = set()
        reps = []
        for x, y, _ in self.positive:
            for e in ((x, y), (y, x)):
                if e in seen:
                    continue
                reps.append(e)
                seen.update((s[e[0]], s[e[1]]) for s in autos)
        return reps

    def layout(self, start: tuple[int, ...] = ()):
        """Vertex order beginning with ``start`` plus per-position constraints.

        Remaining vertices are appended greedily by number of positive pairs
        into the placed set, then by degree.
        """
        got = self._layouts.get(start)
        if got is not None:
            return got
        m, mat = self.m, self.mat
        order = list(start)
        rest = [x for x in range(m) if x not in start]
        while rest:
            placed = set(order)
            x = max(rest, key=lambda v: (sum(1 for u in placed if mat[v][u]), self.deg[v], -v))
            order.append(x)
            rest.remove(x)
        cons = []
        for p, x in enumerate(order):
            cons.append(tuple((q, mat[x][order[q]]) for q in range(p) if mat[x][order[q]]))
        dh = tuple(self.deg[x] for x in order)
        got = (tuple(order), tuple(cons), dh)
        self._layouts[start] = got
        return got


def _automorphisms(mat) -> list[tuple[int, ...]]:
    m = len(mat)
    perm = [0] * m
    used = [False] * m
    out = []

    def rec(j: int) -> None:
        if j == m:
            out.append(tuple(perm))
            return
        for x in range(m):
            if used[x] or mat[x][x] != mat[j][j]:
                continue
            if all(mat[x][perm[i]] == mat[j][i] for i in range(j)):
                used[x] = True
                perm[j] = x
                rec(j + 1)
                used[x] = False

    rec(0)
    return out


@lru_cache(maxsize=256)
def plan_for(H: Pattern) -> PatternPlan:
    return PatternPlan(H)


def _hall_ok(items: list[tuple[int, int]]) -> bool:
    total = 0
    for g, h in sorted(items):
        total += h
        if total > g:
            return False
    return True


def _embed_nested(plan: PatternPlan, mat, degs, start=(), fixed=()) -> tuple[int, ...] | None:
    """Search an embedding of the plan's pattern passing the nested prefix test."""
    n = len(mat)
    order, cons, dh = plan.layout(tuple(start))
    m = len(order)
    if m > n:
        return None
    img = [0] * m
    used = [False] * n
    items: list[tuple[int, int]] = []
    nfixed = len(fixed)

    def rec(p: int) -> bool:
        if p == m:
            return True
        cands = (fixed[p],) if p < nfixed else range(n)
        need = dh[p]
        cp = cons[p]
        for v in cands:
            if used[v] or degs[v] < need:
                continue
            row = mat[v]
            added = []
            good = True
            for q, w in cp:
                g = row[img[q]]
                if g < w:
                    good = False
                    break
                added.append((g, w))
            if not good:
                continue
            if added:
                trial = items + added
                if not _hall_ok(trial):
                    continue
            used[v] = True
            img[p] = v
            items.extend(added)
            if rec(p + 1):
                return True
            del items[len(items) - len(added):]
            used[v] = False
        return False

    if not rec(0):
        return None
    phi = [0] * m
    for p, x in enumerate(order):
        phi[x] = img[p]
    return tuple(phi)


def _slot_matching(slots: list[int], k: int) -> list[int] | None:
    """Assign a distinct color (bit index) to every slot mask, or ``None``."""
    owner = [-1] * k
    for s in range(len(slots)):
        seen = [False] * k

        def augment(t: int) -> bool:
            mask = slots[t]
            c = 0
            while mask:
                if mask & 1 and not seen[c]:
                    seen[c] = True
                    if owner[c] < 0 or augment(owner[c]):
                        owner[c] = t
                        return True
                mask >>= 1
                c += 1
            return False

        if not augment(s):
            return None
    assign = [-1] * len(slots)
    for c, t in enumerate(owner):
        if t >= 0:
            assign[t] = c
    return assign


def _embed_colored(plan: PatternPlan, g: ColoredMultigraph):
    mat = g.matrix
    masks = g.color_masks
    degs = g.degrees()
    n = g.n
    order, cons, dh = plan.layout(())
    m = len(order)
    if m > n:
        return None
    img = [0] * m
    used = [False] * n
    result = []

    def leaf() -> bool:
        phi = [0] * m
        for p, x in enumerate(order):
            phi[x] = img[p]
        slots, owners = [], []
        for x, y, w in plan.positive:
            mask = masks[phi[x]][phi[y]]
            for _ in range(w):
                slots.append(mask)
                owners.append((x, y))
        assign = _slot_matching(slots, g.k)
        if assign is None:
            return False
        colors: dict[Pair, list[int]] = {}
        for (x, y), c in zip(owners, assign):
            colors.setdefault((x, y), []).append(c + 1)
        result.append((tuple(phi), {e: tuple(sorted(cs)) for e, cs in colors.items()}))
        return True

    def rec(p: int) -> bool:
        if p == m:
            return leaf()
        need = dh[p]
        for v in range(n):
            if used[v] or degs[v] < need:
                continue
            row = mat[v]
            if any(row[img[q]] < w for q, w in cons[p]):
                continue
            used[v] = True
            img[p] = v
            if rec(p + 1):
                return True
            used[v] = False
        return False

    return result[0] if rec(0) else None


def _as_colored(g) -> ColoredMultigraph:
    if isinstance(g, ColoredMultigraph):
        return g
    if isinstance(g, MultiplicityGraph):
        from .nesting import from_multiplicity

        return from_multiplicity(g)
    raise InputError(f"unsupported host type {type(g).__name__}")


def find_rainbow(g, H: Pattern) -> EmbeddingCertificate | None:
    """Matching-based decision on an arbitrary simple k-coloring."""
    cg = _as_colored(g)
    if H.m > cg.n:
        return None
    got = _embed_colored(plan_for(H), cg)
    if got is None:
        return None
    phi, colors = got
    return EmbeddingCertificate(phi=phi, colors=colors)


def order_certificate(mat, H: Pattern, phi: Sequence[int]) -> EmbeddingCertificate:
    """Proper-order certificate for ``phi``: pairs sorted by image multiplicity."""
    pos = [(x, y, w) for (x, y), w in zip(pairs(H.m), H.w) if w]
    pos.sort(key=lambda t: mat[phi[t[0]]][phi[t[1]]])
    sums, s = [], 0
    for _, _, w in pos:
        s += w
        sums.append(s)
    return EmbeddingCertificate(phi=tuple(phi), order=tuple((x, y) for x, y, _ in pos), prefix_sums=tuple(sums))


def _nested_host(g) -> MultiplicityGraph:
    if isinstance(g, MultiplicityGraph):
        return g
    if isinstance(g, ColoredMultigraph):
        if not g.is_nested():
            raise InputError("host coloring is not nested; use find_rainbow or nest() first")
        return MultiplicityGraph(g.n, g.k, g.w)
    raise InputError(f"unsupported host type {type(g).__name__}")


def find_rainbow_nested(g, H: Pattern, through: int | None = None) -> EmbeddingCertificate | None:
    """Exact decision on a nested host via the sorted prefix criterion.

    ``through`` restricts the search to copies whose image contains that
    host vertex.
    """
    mg = _nested_host(g)
    if H.m > mg.n:
        return None
    plan = plan_for(H)
    mat, degs = mg.matrix, mg.degrees()
    if through is None:
        phi = _embed_nested(plan, mat, degs)
    else:
        if not 0 <= through < mg.n:
            raise InputError(f"vertex {through} out of range")
        phi = None
        for x in range(H.m):
            phi = _embed_nested(plan, mat, degs, (x,), (through,))
            if phi is not None:
                break
    if phi is None:
        return None
    return order_certificate(mat, H, phi)


def contains_through_pair(plan: PatternPlan, mat, degs, i: int, j: int) -> bool:
    """Nested containment restricted to copies using the host pair ``ij``."""
    for x, y in plan.pin_reps:
        if _embed_nested(plan, mat, degs, (x, y), (i, j)) is not None:
            return True
    return False


def contains_nested(plan: PatternPlan, mat, degs=None) -> bool:
    if degs is None:
        degs = [sum(r) for r in mat]
    return _embed_nested(plan, mat, degs) is not None


def verify_certificate(g, H: Pattern, cert: EmbeddingCertificate) -> CertificateCheck:
    """Independently re-check every invariant of ``cert`` against ``g`` and ``H``."""
    phi = tuple(cert.phi)
    n, m = g.n, H.m
    if len(phi) != m:
        return CertificateCheck(False, "phi-length")
    if any(not isinstance(v, int) or not 0 <= v < n for v in phi):
        return CertificateCheck(False, "phi-out-of-range")
    if len(set(phi)) != m:
        return CertificateCheck(False, "phi-not-injective")
    gm, hm = g.matrix, H.matrix
    for x, y in pairs(m):
        if gm[phi[x]][phi[y]] < hm[x][y]:
            return CertificateCheck(False, f"multiplicity:{x},{y}")
    positive = {(x, y) for (x, y), w in zip(pairs(m), H.w) if w}

    if cert.order is not None:
        if isinstance(g, ColoredMultigraph) and not g.is_nested():
            return CertificateCheck(False, "host-not-nested")
        seen = []
        for e in cert.order:
            if len(e) != 2:
                return CertificateCheck(False, "order-malformed")
            x, y = sorted(e)
            seen.append((x, y))
        if len(seen) != len(set(seen)) or set(seen) != positive:
            return CertificateCheck(False, "order-incomplete")
        total = 0
        sums = []
        for j, (x, y) in enumerate(seen, start=1):
            total += hm[x][y]
            sums.append(total)
            if total > gm[phi[x]][phi[y]]:
                return CertificateCheck(False, f"prefix-overflow:{j}")
        if cert.prefix_sums is not None and tuple(cert.prefix_sums) != tuple(sums):
            return CertificateCheck(False, "prefix-sums-mismatch")
        return CertificateCheck(True)

    if cert.colors is not None:
        norm = {}
        for e, cs in cert.colors.items():
            x, y = sorted(e)
            norm[(x, y)] = tuple(cs)
        if set(k for k, cs in norm.items() if cs) != positive:
            return CertificateCheck(False, "slot-count")
        used: set[int] = set()
        for (x, y), cs in norm.items():
            if len(cs) != hm[x][y]:
                return CertificateCheck(False, "slot-count")
            u, v = phi[x], phi[y]
            if isinstance(g, ColoredMultigraph):
                present = g.colors_at(u, v)
            else:
                present = range(1, gm[u][v] + 1)
            for c in cs:
                if c not in present:
                    return CertificateCheck(False, "color-absent")
                if c in used:
                    return CertificateCheck(False, "duplicate-color")
                used.add(c)
        return CertificateCheck(True)

    return CertificateCheck(False, "no-evidence")
