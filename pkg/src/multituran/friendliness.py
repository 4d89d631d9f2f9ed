"""H-friendly skeletons and explicit embedding schedules.

An ``(r-1)``-partite host ``K`` with parts ``W_1..W_{r-1}`` of equal size
``a`` is *H-friendly* when every way of attaching one new vertex ``v`` with
pair multiplicities at most ``k``, total degree at least
``(r-2) a max(k, k*)`` and at least one unit into every part creates a
multicolored copy of ``H``.

Two schedules produce proper embedding orders directly instead of searching:
:func:`embed_4cc` for 4-vertex 4-color-critical patterns on a 4-vertex host,
and :func:`fr_embedding_order` for ``r``-vertex patterns of bounded
multiplicity attached to an ``(r-1)``-vertex skeleton.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .core import MultiplicityGraph, Pattern, pairs
from .criticality import alpha, chromatic_number, critical_edges, k_star, reduce_minmax
from .exceptions import CapabilityError, InputError, InvariantError
from .parallel import ordered_map
from .rainbow import EmbeddingCertificate, _embed_nested, plan_for, verify_certificate

log = logging.getLogger(__name__)

FRIENDLY_MAX_A = 5
FRIENDLY_MAX_K = 8
EXCEPTIONAL = "exceptional"


def attach_vertex(K: MultiplicityGraph, attach: Sequence[int], k: int | None = None) -> MultiplicityGraph:
    """``K`` plus a new last vertex joined to vertex ``u`` with ``attach[u]``."""
    k = K.k if k is None else k
    if len(attach) != K.n:
        raise InputError(f"attachment must have {K.n} entries")
    rows = [list(r) + [attach[i]] for i, r in enumerate(K.matrix)]
    rows.append(list(attach) + [0])
    return MultiplicityGraph.from_matrix(k, rows)


# ---------------------------------------------------------------- friendliness

@dataclass(frozen=True)
class FriendlyResult:
    friendly: bool
    witness: tuple[int, ...] | None
    checked: int
    threshold: int = 0

    def __bool__(self) -> bool:
        return self.friendly


def _validate_parts(K: MultiplicityGraph, parts) -> list[list[int]]:
    parts = [sorted(int(v) for v in p) for p in parts]
    flat = sorted(v for p in parts for v in p)
    if flat != list(range(K.n)):
        raise InputError("parts must partition the vertex set of K")
    if len(parts) < 2:
        raise InputError("need at least two parts")
    a = len(parts[0])
    if a == 0 or any(len(p) != a for p in parts):
        raise InputError("parts must be nonempty and of equal size")
    for p in parts:
        for u, v in itertools.combinations(p, 2):
            if K.weight(u, v):
                raise InputError(f"K has an edge ({u},{v}) inside a part")
    return parts


def friendly_threshold(r: int, a: int, k: int, h: int) -> int:
    """Smallest integer degree meeting ``(r-2) a max(k, k*)``."""
    return ceil((r - 2) * a * max(Fraction(k), k_star(r, h)))


def _twin_classes(K: MultiplicityGraph, parts) -> list[list[int]]:
    mat = K.matrix
    out = []
    for p in parts:
        groups: dict[tuple, list[int]] = {}
        for v in p:
            key = tuple(mat[v][u] for u in range(K.n) if u != v and u not in p)
            groups.setdefault(key, []).append(v)
        out.extend(groups.values())
    return out


def _vectors(N: int, k: int, lo: int, hi: int, part_of: list[int], nparts: int,
             ties: list[int], prefix: tuple[int, ...] = ()):
    """Attachment vectors with total in ``[lo, hi]``, every part touched.

    ``ties[u]`` is the previous vertex of ``u``'s twin class (or -1); entries
    are non-increasing along each class.
    """
    x = list(prefix) + [0] * (N - len(prefix))
    part_sum = [0] * nparts
    for u, val in enumerate(prefix):
        part_sum[part_of[u]] += val
    # remaining[u] = vertices of each part at positions >= u
    rem_parts = [[0] * nparts for _ in range(N + 1)]
    for u in range(N - 1, -1, -1):
        rem_parts[u] = rem_parts[u + 1][:]
        rem_parts[u][part_of[u]] += 1

    def rec(u: int, total: int):
        if total > hi:
            return
        if u == N:
            if total >= lo and all(part_sum):
                yield tuple(x)
            return
        left = N - u
        if total + left * k < lo:
            return
        for p in range(nparts):
            if part_sum[p] == 0 and rem_parts[u][p] == 0:
                return
        top = k if ties[u] < 0 else x[ties[u]]
        for val in range(min(top, hi - total), -1, -1):
            x[u] = val
            part_sum[part_of[u]] += val
            yield from rec(u + 1, total + val)
            part_sum[part_of[u]] -= val
        x[u] = 0

    yield from rec(len(prefix), sum(prefix))


def _friendly_chunk(args):
    K, H, k, lo, hi, part_of, nparts, ties, prefix = args
    plan = plan_for(H)
    N = K.n
    base = [list(r) + [0] for r in K.matrix] + [[0] * (N + 1)]
    checked = 0
    for vec in _vectors(N, k, lo, hi, part_of, nparts, ties, prefix):
        checked += 1
        for u in range(N):
            base[u][N] = base[N][u] = vec[u]
        degs = [sum(r) for r in base]
        found = False
        for x in range(H.m):
            if _embed_nested(plan, base, degs, (x,), (N,)) is not None:
                found = True
                break
        if not found:
            return checked, vec
    return checked, None


def is_H_friendly(K: MultiplicityGraph, parts, H: Pattern, k: int | None = None,
                  exhaustive: bool = False, threads: int = 1) -> FriendlyResult:
    """Decide H-friendliness of ``K`` with the given vertex partition.

    Containment only grows when an attachment entry grows, and the admissible
    attachments form an up-set, so it suffices to test the minimal ones: those
    whose total equals the degree threshold.  Vertices of one part with equal
    rows in ``K`` are interchangeable, so their entries are enumerated in
    non-increasing order.  ``exhaustive=True`` skips both reductions and
    tests every admissible attachment.
    """
    k = K.k if k is None else k
    parts = _validate_parts(K, parts)
    r = len(parts) + 1
    a = len(parts[0])
    if a > FRIENDLY_MAX_A or k > FRIENDLY_MAX_K:
        raise CapabilityError(f"friendliness supports part size <= {FRIENDLY_MAX_A} and k <= {FRIENDLY_MAX_K}")
    if max(K.w, default=0) > k:
        raise InputError("K has a multiplicity above k")
    if chromatic_number(H) != r:
        raise InputError(f"pattern must be {r}-chromatic for {r - 1} parts")
    if not critical_edges(H):
        raise InputError("pattern must be color-critical")
    N = K.n
    T = friendly_threshold(r, a, k, H.h)
    if T > N * k:
        return FriendlyResult(True, None, 0, T)
    # a copy already inside K makes every extension contain one
    if _embed_nested(plan_for(H), K.matrix, K.degrees()) is not None:
        return FriendlyResult(True, None, 0, T)

    part_of = [0] * N
    for i, p in enumerate(parts):
        for v in p:
            part_of[v] = i
    ties = [-1] * N
    if exhaustive:
        lo, hi = T, N * k
    else:
        # with T >= r-1 every minimal admissible vector has total exactly T
        lo, hi = T, max(T, r - 1)
        for cls in _twin_classes(K, parts):
            for prev, cur in zip(cls, cls[1:]):
                ties[cur] = prev
    # split on the first entry for parallel workers; merge in enumeration order
    first_top = k
    chunks = [(K, H, k, lo, hi, part_of, len(parts), ties, (val,)) for val in range(first_top, -1, -1)]
    results = ordered_map(_friendly_chunk, chunks, threads)
    checked = 0
    for c, wit in results:
        checked += c
        if wit is not None:
            log.info("friendliness witness %s", wit)
            return FriendlyResult(False, wit, checked, T)
    return FriendlyResult(True, None, checked, T)


def complete_multipartite(parts: int, size: int, mult: int, k: int | None = None) -> tuple[MultiplicityGraph, list[list[int]]]:
    """``mult * K_{size,...,size}`` with vertex ``i`` in part ``i // size``."""
    n = parts * size
    k = mult if k is None else k
    w = tuple(0 if u // size == v // size else mult for u, v in pairs(n))
    return MultiplicityGraph(n, k, w), [list(range(i * size, (i + 1) * size)) for i in range(parts)]


# ---------------------------------------------------- 4-vertex case schedule

G0_LABELS = {"a": (0, 1), "b1": (0, 2), "b2": (1, 2), "c1": (0, 3), "c2": (1, 3), "c3": (2, 3)}
H_LABELS = {"I": (0, 1), "h1": (0, 2), "h2": (1, 2), "h3": (0, 3), "h4": (1, 3), "h5": (2, 3)}


def g0_from_labels(a, b1, b2, c1, c2, c3, k: int) -> MultiplicityGraph:
    vals = {"a": a, "b1": b1, "b2": b2, "c1": c1, "c2": c2, "c3": c3}
    return MultiplicityGraph.from_edges(4, k, {G0_LABELS[n]: v for n, v in vals.items()})


def pattern_from_labels(h1, h2, h3, h4, h5, name: str = "") -> Pattern:
    vals = {"I": 1, "h1": h1, "h2": h2, "h3": h3, "h4": h4, "h5": h5}
    return Pattern.from_edges(4, {H_LABELS[n]: v for n, v in vals.items()}, name)


def _labels(g, table) -> dict[str, int]:
    return {name: g.weight(*p) for name, p in table.items()}


def check_4cc_hypotheses(G0: MultiplicityGraph, H: Pattern, k: int) -> list[str]:
    """Names of the violated preconditions (empty when all hold)."""
    h = H.h
    g = _labels(G0, G0_LABELS)
    c = sorted([g["c1"], g["c2"], g["c3"]])
    bad = []
    if k < h:
        bad.append("k >= h")
    if max(G0.w) > k:
        bad.append("multiplicities <= k")
    if g["a"] < h:
        bad.append("a >= h")
    if 2 * g["b1"] < h - 1:
        bad.append("b1 >= (h-1)/2")
    if g["b2"] < h - 1:
        bad.append("b2 >= h-1")
    if sum(c) < max(3 * h - 3, 2 * k):
        bad.append("c1+c2+c3 >= max(3h-3, 2k)")
    if c[0] < 1:
        bad.append("min c >= 1")
    if 4 * c[1] < 3 * h - 3:
        bad.append("second-smallest c >= (3h-3)/4")
    if c[2] < h - 1:
        bad.append("max c >= h-1")
    return bad


def _check_4cc_pattern(H: Pattern) -> None:
    if H.m != 4:
        raise InputError("pattern must have 4 vertices")
    if H.weight(0, 1) != 1:
        raise InputError("pattern pair (0,1) must have multiplicity 1 (the critical edge I)")
    if any(w < 1 for w in H.w):
        raise InputError("a 4-vertex 4-color-critical pattern uses all six pairs")


def _pinned_phi(p1, q1, p2, q2):
    """The unique bijection mapping pattern pairs ``p1, p2`` onto ``q1, q2``."""
    found = [
        phi for phi in itertools.permutations(range(4))
        if {phi[p1[0]], phi[p1[1]]} == set(q1) and {phi[p2[0]], phi[p2[1]]} == set(q2)
    ]
    if len(found) != 1:
        raise InvariantError(f"pins {p1}->{q1}, {p2}->{q2} do not determine one embedding")
    return found[0]


def schedule_4cc(G0: MultiplicityGraph, H: Pattern, k: int | None = None):
    """Run the case analysis; return ``(case, certificate or None)``.

    ``case`` is one of ``"1-1", "1-2", "2", "3-1", "3-2", "3-3"`` or
    ``"exceptional"``.
    """
    k = G0.k if k is None else k
    if G0.n != 4:
        raise InputError("host must have 4 vertices")
    _check_4cc_pattern(H)
    bad = check_4cc_hypotheses(G0, H, k)
    if bad:
        raise InputError("hypotheses violated: " + "; ".join(bad))
    h = H.h
    g = _labels(G0, G0_LABELS)
    hv = _labels(H, H_LABELS)
    # ties among the c's go to the lower label index
    cs = sorted(["c1", "c2", "c3"], key=lambda n: (g[n], n))
    cmin, c2nd, cmax = cs
    f = [cmin, "b1", c2nd, cmax, "b2", "a"]
    four = ["h1", "h2", "h3", "h4"]
    hmin = min(four, key=lambda n: (hv[n], n))
    hmax = max(four, key=lambda n: (hv[n], -int(n[1])))
    half = Fraction(h - 1, 2)

    if all(hv[n] < half for n in four + ["h5"]):
        if cmin != "c2":
            case, pin = "1-1", (hmin, 1)
        else:
            case, pin = "1-2", (hmin, 2)
    elif hv[hmax] >= half:
        case = "2"
        pin = (hmax, 5) if cmin != "c3" else (hmax, 4)
    elif hv["h5"] >= half and g["b1"] >= hv["h5"] + 1:
        if cmin != "c2":
            case, pin = "3-1", (hmin, 1)
        elif g[c2nd] >= 1 + hv[hmin] + hv["h5"]:
            case, pin = "3-2", (hmin, 2)
        else:
            case = "3-3"
            f = [c2nd, "b1", cmin, cmax, "b2", "a"]
            pin = (hmin, 1)
    else:
        return EXCEPTIONAL, None

    phi = _pinned_phi(H_LABELS["I"], G0_LABELS[f[0]], H_LABELS[pin[0]], G0_LABELS[f[pin[1]]])
    inv = {frozenset((phi[x], phi[y])): (x, y) for x, y in pairs(4)}
    order = tuple(inv[frozenset(G0_LABELS[name])] for name in f)
    sums = tuple(itertools.accumulate(H.weight(*e) for e in order))
    cert = EmbeddingCertificate(phi=tuple(phi), order=order, prefix_sums=sums)
    check = verify_certificate(G0, H, cert)
    if not check:
        raise InvariantError(f"case {case} produced an invalid order ({check.reason}) for {G0} and {H}")
    return case, cert


def embed_4cc(G0: MultiplicityGraph, H: Pattern, k: int | None = None):
    """Certificate from the case schedule, or ``"exceptional"`` when ``h5 >= b1``."""
    case, cert = schedule_4cc(G0, H, k)
    return EXCEPTIONAL if cert is None else cert


# ------------------------------------------------- r-vertex schedule for F_r

@dataclass(frozen=True)
class OrderQuantities:
    """Exact rationals governing the r-vertex schedule for given ``r, h``."""

    r: int
    h: int
    alpha: Fraction
    b: dict  # (j, i) -> Fraction
    m1: dict  # i -> int, 2 <= i <= r-2
    m2: dict  # i -> int, 1 <= i <= r-3
    F1: dict
    F2: dict


def order_quantities(r: int, h: int) -> OrderQuantities:
    """Host lower bounds ``b_{j,i}``, list positions and slacks ``F_1, F_2``.

    ``b_{j,i} = (i(r-1) - (j-1)) / (i(r-2)) * (h-1)`` bounds the ``i``-th
    smallest multiplicity from vertex ``j`` back to earlier vertices;
    ``m_{1,i}`` and ``m_{2,i}`` are the list positions of ``e_{r,i}`` and
    ``e_{i+2,i}``; ``F`` is the bound minus the worst-case prefix weight.
    """
    if r < 3:
        raise InputError("r must be at least 3")
    al = alpha(r)
    b = {}
    for j in range(2, r + 1):
        for i in range(1, j):
            b[(j, i)] = Fraction(i * (r - 1) - (j - 1), i * (r - 2)) * (h - 1)
    m1 = {i: (i - 1) * (r - 1) - i * (i - 1) // 2 + 1 for i in range(2, r - 1)}
    m2 = {i: i * (r - 1) - i * (i + 1) // 2 for i in range(1, r - 2)}
    F1 = {i: b[(r, i)] - (m1[i] - 1) * al * (h - 1) for i in m1}
    F2 = {i: b[(i + 2, i)] - (m2[i] - 1) * al * (h - 1) for i in m2}
    return OrderQuantities(r, h, al, b, m1, m2, F1, F2)


def fr_host_order(G0: MultiplicityGraph) -> list[tuple[int, int]]:
    """Positional order of host pairs on ``v_1..v_r`` (vertices ``0..r-1``).

    ``e_{j,1..j-1}`` lists the pairs from ``v_j`` back to earlier vertices by
    ascending multiplicity.  Rows ``i = 1..r-2`` list ``e_{r,i}, ..., e_{i+2,i}``;
    the last row lists ``e_{r,r-1}, e_{r-1,r-2}, ..., e_{2,1}``.
    """
    r = G0.n
    mat = G0.matrix
    e = {}
    for j in range(2, r + 1):
        back = sorted(range(1, j), key=lambda i: (mat[i - 1][j - 1], i))
        for rank, i in enumerate(back, start=1):
            e[(j, rank)] = (i - 1, j - 1)
    order = []
    for i in range(1, r - 1):
        for j in range(r, i + 1, -1):
            order.append(e[(j, i)])
    for j in range(r, 1, -1):
        order.append(e[(j, j - 1)])
    return order


def check_fr_hypotheses(K: MultiplicityGraph, H: Pattern, attach: Sequence[int], k: int) -> list[str]:
    r = K.n + 1
    h = H.h
    bad = []
    if r < 5:
        bad.append("r >= 5")
    if H.m != r:
        bad.append(f"pattern has r = {r} vertices")
    if k < h:
        bad.append("k >= h")
    if max(K.w, default=0) > k or any(not 0 <= x <= k for x in attach):
        bad.append("multiplicities in 0..k")
    if len(attach) != r - 1:
        bad.append(f"attachment has {r - 1} entries")
        return bad
    if K.n >= 2 and K.weight(0, 1) < h:
        bad.append("w(v1 v2) >= h")
    mat = K.matrix
    lvl = max(Fraction(h - 1), Fraction((r - 2) * k, r - 1))
    for j in range(3, r):
        if sum(mat[i][j - 1] for i in range(j - 1)) < (j - 1) * lvl:
            bad.append(f"sum_(i<{j}) w(v_i v_{j}) >= {j - 1}*max(h-1,(r-2)k/(r-1))")
    if r >= 3 and sum(attach) < (r - 2) * max(Fraction(k), k_star(r, h)):
        bad.append("attachment total >= (r-2)max(k, k*)")
    if min(attach, default=0) < 1:
        bad.append("attachment touches every vertex")
    return bad


def fr_embedding_order(K: MultiplicityGraph, H: Pattern, v_attach: Sequence[int], k: int | None = None) -> EmbeddingCertificate:
    """Proper embedding order of ``H`` into ``K`` plus an attached vertex.

    A critical edge of ``H`` goes to ``e_{r,1}``, the lightest pair at the
    new vertex; the remaining vertices follow in ascending order.  Every
    other pattern pair weighs at most ``alpha_r (h-1)``, which the host
    bounds ``b_{j,i}`` dominate position by position.
    """
    k = K.k if k is None else k
    v_attach = [int(x) for x in v_attach]
    bad = check_fr_hypotheses(K, H, v_attach, k)
    if bad:
        raise InputError("hypotheses violated: " + "; ".join(bad))
    r, h = H.m, H.h
    rep = reduce_minmax(H)
    if rep.chi != r or not rep.is_color_critical:
        raise InputError(f"pattern must be {r}-color-critical")
    if not rep.in_Fr:
        raise InputError(f"pattern multiplicities exceed alpha_r (h-1) = {rep.fr_bound}")
    q = order_quantities(r, h)
    if any(v <= 0 for v in q.F1.values()) or any(v <= 0 for v in q.F2.values()):
        raise InvariantError(f"nonpositive slack for r={r}, h={h}: F1={q.F1}, F2={q.F2}")

    G0 = attach_vertex(K, v_attach, k)
    order = fr_host_order(G0)
    x, y = rep.critical_edges[0]
    deg = H.degrees()
    if deg[x] > deg[y]:
        x, y = y, x
    target = order[0]  # (v_i, v_r) with v_r = r-1
    phi = [-1] * r
    phi[x] = target[1]
    phi[y] = target[0]
    free_hosts = [v for v in range(r) if v not in target]
    for u, v in zip([u for u in range(r) if u not in (x, y)], free_hosts):
        phi[u] = v
    inv = {frozenset((phi[a], phi[b])): (a, b) for a, b in pairs(r)}
    hm = H.matrix
    e_order = tuple(p for p in (inv[frozenset(f)] for f in order) if hm[p[0]][p[1]])
    sums = tuple(itertools.accumulate(hm[a][b] for a, b in e_order))
    cert = EmbeddingCertificate(phi=tuple(phi), order=e_order, prefix_sums=sums)
    check = verify_certificate(G0, H, cert)
    if not check:
        raise InvariantError(f"schedule order failed ({check.reason}) on {G0} for {H}")
    return cert
