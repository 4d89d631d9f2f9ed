"""Exact values of ex_k(n, H) for small n by branch and bound.

Every simple k-coloring can be made nested without creating a multicolored
copy, so the search runs over multiplicity functions ``w: pairs -> 0..k``.
Pairs are assigned in colex order, i.e. vertex by vertex: block ``j`` holds
the pairs ``(0,j), ..., (j-1,j)``.

Freeness is maintained incrementally: after a pair is set, only copies that
use that pair need checking, and by monotonicity the admissible values of a
pair form an interval ``0..vmax``.

Upper bound at a node inside block ``j`` (``S = {0..j-1}`` complete)::

    e(S) + min(block so far + k * unset, A(S)) + (n-j-1) * A(S) + ex(n-j)

where ``A(S)`` is the largest total multiplicity a single new vertex can
send into ``S`` without creating a copy, and ``ex(n-j)`` bounds the edges
spanned by vertex ``j`` and the later vertices.

With canonical pruning on, a completed block is kept only when the graph on
the vertices so far has maximal colex string among its relabelings; since
that property is inherited by prefixes, every isomorphism class keeps its
canonical representative.

The tree is always split into independent subtrees on the first three pairs,
each seeded with the same incumbent, and merged in a fixed order, so reports
do not depend on the worker count.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .canon import canonical_key, canonical_labeling, is_canonical
from .constructions import complete_family, hybrid_family, turan_family
from .core import MultiplicityGraph, Pattern, symmetric_difference, turan_numbers
from .criticality import chromatic_number, critical_edges, k_star
from .exceptions import CapabilityError, InputError
from .parallel import ordered_map
from .rainbow import contains_nested, contains_through_pair, find_rainbow, plan_for

log = logging.getLogger(__name__)

SOLVE_MAX_N = 7
SOLVE_MAX_K = 8
SOLVE_MAX_H = 10
SPLIT_PAIRS = 3


def pattern_id(H: Pattern) -> str:
    if H.name:
        return H.name
    body = ",".join(f"{u}-{v}:{w}" for u, v, w in H.edges())
    return f"m{H.m}[{body}]"


@dataclass
class SearchReport:
    n: int
    k: int
    pattern_id: str
    value: int
    witnesses: tuple[MultiplicityGraph, ...]
    lower_bounds: dict
    agrees_with_goodness: str
    nodes_explored: int
    elapsed: float = 0.0
    canonical: bool = True
    witnesses_complete: bool = True
    upper_bound: int | None = None
    notes: tuple[str, ...] = field(default=())

    def deterministic_view(self) -> dict:
        """Every field except the wall-clock time."""
        return {
            "n": self.n, "k": self.k, "pattern_id": self.pattern_id, "value": self.value,
            "witnesses": [g.w for g in self.witnesses], "lower_bounds": dict(self.lower_bounds),
            "agrees_with_goodness": self.agrees_with_goodness, "nodes_explored": self.nodes_explored,
            "witnesses_complete": self.witnesses_complete,
        }


def _check_caps(H: Pattern, n: int, k: int) -> None:
    if n < 1 or k < 0:
        raise InputError("need n >= 1 and k >= 0")
    if H.h < 1:
        raise InputError("pattern must have at least one edge")
    if n > SOLVE_MAX_N or k > SOLVE_MAX_K or H.h > SOLVE_MAX_H:
        raise CapabilityError(f"exact search supports n <= {SOLVE_MAX_N}, k <= {SOLVE_MAX_K}, h <= {SOLVE_MAX_H}")


def _is_free(H: Pattern, g: MultiplicityGraph) -> bool:
    return not contains_nested(plan_for(H), g.matrix, g.degrees())


# ------------------------------------------------------------------ searcher

_ATTACH_CACHE: dict = {}


class _Searcher:
    """One depth-first branch and bound over the colex pair order."""

    def __init__(self, H: Pattern, n: int, k: int, exs: Sequence[int], mode: str, bar: int,
                 canonical: bool = True, min_degree: bool = False):
        self.H, self.n, self.k = H, n, k
        self.plan = plan_for(H)
        self.exs = list(exs)
        self.mode = mode  # "value" | "witness" | "enumerate"
        self.best = bar
        self.canonical = canonical
        self.min_degree = min_degree and n >= 2
        self.mat = [[0] * n for _ in range(n)]
        self.degs = [0] * n
        self.order = [(i, j) for j in range(1, n) for i in range(j)]
        self.nodes = 0
        self.found: list = []  # (total, weights) per collected leaf
        self.block_base = [0] * n
        self.block_cap = [0] * n

    # -- helpers
    def _set(self, i: int, j: int, v: int) -> None:
        old = self.mat[i][j]
        self.mat[i][j] = self.mat[j][i] = v
        self.degs[i] += v - old
        self.degs[j] += v - old

    def _free_at(self, i: int, j: int) -> bool:
        return not contains_through_pair(self.plan, self.mat, self.degs, i, j)

    def _max_feasible(self, i: int, j: int, cap: int) -> int:
        if cap <= 0:
            return 0
        self._set(i, j, cap)
        if self._free_at(i, j):
            self._set(i, j, 0)
            return cap
        lo, hi = 0, cap - 1  # lo always free
        while lo < hi:
            mid = (lo + hi + 1) // 2
            self._set(i, j, mid)
            if self._free_at(i, j):
                lo = mid
            else:
                hi = mid - 1
        self._set(i, j, 0)
        return lo

    def single_caps(self, j: int) -> list[int]:
        """Largest free value of each pair ``(i, j)`` with the rest of block ``j`` empty."""
        return [self._max_feasible(i, j, self.k) for i in range(j)]

    def _twin_ties(self, j: int) -> list[int]:
        # u, u' are twins when their rows agree off {u, u'}; swapping them is
        # an automorphism while block j is still empty
        mat = self.mat
        cls = list(range(j))
        for u in range(j):
            for v in range(u):
                if cls[v] == v and all(mat[u][z] == mat[v][z] for z in range(j) if z != u and z != v):
                    cls[u] = v
                    break
        return cls

    def attach_cap(self, j: int, caps: list[int] | None = None) -> int:
        """``A(S)`` for ``S = {0..j-1}``, using vertex ``j`` as the new vertex."""
        k = self.k
        if j + 1 < self.H.m:
            return k * j
        key = (self.H, self.n, k, tuple(tuple(self.mat[a][:j]) for a in range(j)))
        got = _ATTACH_CACHE.get(key)
        if got is not None:
            return got
        if caps is None:
            caps = self.single_caps(j)
        cls = self._twin_ties(j)
        idx = sorted(range(j), key=lambda i: (-caps[i], cls[i], i))
        prev = [-1] * j
        last_in: dict[int, int] = {}
        for i in idx:
            prev[i] = last_in.get(cls[i], -1)
            last_in[cls[i]] = i
        top_total = sum(caps)
        val = [0] * j
        best = [0]

        def rec(t: int, total: int, cur: list[int]) -> bool:
            # cur[t:] are caps of the open positions given the choices so far
            if t == j:
                if total > best[0]:
                    best[0] = total
                return total == top_total
            if total + sum(cur[t:]) <= best[0]:
                return False
            i = idx[t]
            top = cur[t] if prev[i] < 0 else min(cur[t], val[prev[i]])
            for v in range(top, -1, -1):
                if total + v + sum(cur[t + 1:]) <= best[0]:
                    break
                self._set(i, j, v)
                val[i] = v
                nxt = cur[: t + 1] + [self._max_feasible(idx[q], j, cur[q]) if v else cur[q] for q in range(t + 1, j)]
                done = rec(t + 1, total + v, nxt)
                self._set(i, j, 0)
                if done:
                    return True
            val[i] = 0
            return False

        rec(0, 0, [caps[i] for i in idx])
        if len(_ATTACH_CACHE) > 200_000:
            _ATTACH_CACHE.clear()
        _ATTACH_CACHE[key] = best[0]
        return best[0]

    def _open_block(self, j: int, total: int) -> bool:
        """Record the start of block ``j``; False when it is already hopeless.

        The sum of single-pair caps bounds ``A(S)`` and is much cheaper, so
        it is tried first.
        """
        self.block_base[j] = total
        n = self.n
        if j + 1 < self.H.m:
            self.block_cap[j] = self.k * j
        else:
            caps = self.single_caps(j)
            cheap = sum(caps)
            if j >= 2 and self.block_cap[j - 1]:
                # S minus its last vertex already has an exact cap
                cheap = min(cheap, self.block_cap[j - 1] + caps[j - 1])
            if self._prune(total + (n - j) * cheap + self.exs[n - j]):
                return False
            self.block_cap[j] = self.attach_cap(j, caps)
        return not self._prune(total + (n - j) * self.block_cap[j] + self.exs[n - j])

    def _prefix_canonical(self, j: int) -> bool:
        return is_canonical(tuple(tuple(self.mat[a][: j + 1]) for a in range(j + 1)))

    def _degree_ok(self, j: int, total: int) -> bool:
        # a graph of value >= target minus a vertex is free on n-1 vertices
        target = self.best + (1 if self.mode == "value" else 0)
        need = target - self.exs[self.n - 1]
        if need <= 0:
            return True
        room = self.k * (self.n - 1 - j)
        return all(self.degs[v] + room >= need for v in range(j + 1))

    def _prune(self, ub: int) -> bool:
        if self.mode == "value":
            return ub <= self.best
        return ub < self.best

    def _leaf(self, total: int) -> None:
        w = tuple(self.mat[u][v] for u in range(self.n) for v in range(u + 1, self.n))
        if self.mode == "value":
            if total > self.best:
                self.best = total
                self.found = [(total, w)]
        elif self.mode == "witness":
            if total > self.best:
                self.best = total
                self.found = []
            if total == self.best:
                self.found.append((total, w))
        else:
            if total >= self.best:
                self.found.append((total, w))

    # -- main recursion
    def run(self, prefix: Sequence[int] = ()) -> None:
        total = 0
        for p, v in enumerate(prefix):
            i, j = self.order[p]
            if i == 0:
                self.block_base[j] = total
            self._set(i, j, v)
            total += v
        self._rec(len(prefix), total)

    def _rec(self, p: int, total: int) -> None:
        self.nodes += 1
        if p == len(self.order):
            self._leaf(total)
            return
        n, k = self.n, self.k
        i, j = self.order[p]
        if i == 0 and not self._open_block(j, total):
            return
        base = self.block_base[j]
        A = self.block_cap[j]
        bs = total - base
        ub = base + min(bs + k * (j - i), A) + (n - j - 1) * A + self.exs[n - j]
        if self._prune(ub):
            return
        vmax = self._max_feasible(i, j, min(k, A - bs))
        last = i == j - 1
        for v in range(vmax, -1, -1):
            self._set(i, j, v)
            if last:
                if self.canonical and not self._prefix_canonical(j):
                    continue
                if self.min_degree and not self._degree_ok(j, total + v):
                    continue
            self._rec(p + 1, total + v)
        self._set(i, j, 0)

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """Admissible assignments of the first ``depth`` pairs, in search order."""
        out: list[tuple[int, ...]] = []
        vals: list[int] = []

        def rec(p: int, total: int) -> None:
            self.nodes += 1
            if p == depth:
                out.append(tuple(vals))
                return
            n, k = self.n, self.k
            i, j = self.order[p]
            if i == 0 and not self._open_block(j, total):
                return
            base, A = self.block_base[j], self.block_cap[j]
            bs = total - base
            ub = base + min(bs + k * (j - i), A) + (n - j - 1) * A + self.exs[n - j]
            if self._prune(ub):
                return
            vmax = self._max_feasible(i, j, min(k, A - bs))
            for v in range(vmax, -1, -1):
                self._set(i, j, v)
                if i == j - 1 and self.canonical and not self._prefix_canonical(j):
                    continue
                vals.append(v)
                rec(p + 1, total + v)
                vals.pop()
            self._set(i, j, 0)

        rec(0, 0)
        return out


def _run_task(args):
    H, n, k, exs, mode, bar, canonical, min_degree, prefix = args
    s = _Searcher(H, n, k, exs, mode, bar, canonical, min_degree)
    s.run(prefix)
    return s.nodes, s.best, s.found


def _search(H: Pattern, n: int, k: int, exs, mode: str, bar: int, canonical: bool,
            min_degree: bool, threads: int):
    """Run the split search; returns ``(nodes, best, found)`` merged in order."""
    top = _Searcher(H, n, k, exs, mode, bar, canonical, min_degree)
    depth = min(SPLIT_PAIRS, len(top.order))
    roots = top.prefixes(depth)
    nodes = top.nodes
    if depth == len(top.order):
        for pre in roots:
            top.run(pre)
        return nodes, top.best, top.found
    tasks = [(H, n, k, tuple(exs), mode, bar, canonical, min_degree, pre) for pre in roots]
    results = ordered_map(_run_task, tasks, threads)
    best = bar
    found: list = []
    for c, b, f in results:
        nodes += c
        if mode == "value":
            if b > best:
                best, found = b, f
        elif mode == "witness":
            if b > best:
                best, found = b, []
            if b == best:
                found.extend(x for x in f if x[0] == best)
        else:
            found.extend(f)
    return nodes, best, found


@lru_cache(maxsize=512)
def _ex_solve(H: Pattern, n: int, k: int) -> tuple[int, MultiplicityGraph]:
    """Plain value of ex_k(n, H) and one extremal graph, reused as bounds."""
    if n <= 1 or H.m > n:
        return k * comb(n, 2), MultiplicityGraph(n, k, tuple([k] * comb(n, 2)))
    exs = [_ex_solve(H, t, k)[0] for t in range(n)]
    bar, inc = _incumbent(H, n, k, exs, _ex_solve(H, n - 1, k)[1])
    if bar >= _averaging_cap(n, exs):
        return bar, inc
    _, best, found = _search(H, n, k, exs, "value", bar, True, False, 1)
    return best, (MultiplicityGraph(n, k, found[0][1]) if found else inc)


def _ex_value(H: Pattern, n: int, k: int) -> int:
    return _ex_solve(H, n, k)[0]


def _averaging_cap(n: int, exs) -> int:
    # each vertex-deleted subgraph is free, and every edge survives n-2 of them
    if n >= 3:
        return (exs[n - 1] * n) // (n - 2)
    return 10 ** 9


def _constructions(H: Pattern, n: int, k: int) -> dict[str, MultiplicityGraph]:
    out = {"complete": complete_family(n, min(H.h, k + 1), k) if k >= 1 else MultiplicityGraph.empty(n, k)}
    r = chromatic_number(H)
    if r >= 3 and k >= 1:
        out["turan"] = turan_family(n, k, r)
        out["hybrid"] = hybrid_family(n, k, r)
    return out


def _extend(H: Pattern, g: MultiplicityGraph, k: int) -> MultiplicityGraph:
    """Add one vertex to ``g`` with greedily maximal free attachments."""
    n = g.n + 1
    mat = [list(r) + [0] for r in g.matrix] + [[0] * n]
    plan = plan_for(H)
    for i in range(n - 1):
        for v in range(k, 0, -1):
            mat[i][n - 1] = mat[n - 1][i] = v
            degs = [sum(r) for r in mat]
            if not contains_through_pair(plan, mat, degs, i, n - 1):
                break
            mat[i][n - 1] = mat[n - 1][i] = 0
    return MultiplicityGraph.from_matrix(k, mat)


def _incumbent(H: Pattern, n: int, k: int, exs, prev: MultiplicityGraph | None = None):
    best, wit = 0, MultiplicityGraph.empty(n, k)
    cands = list(_constructions(H, n, k).values())
    if prev is not None:
        cands.append(_extend(H, prev, k))
    for g in cands:
        if g.edge_count > best and _is_free(H, g):
            best, wit = g.edge_count, g
    return best, wit


def solve_exact(H: Pattern, n: int, k: int, witnesses: bool = True, canonical: bool = True,
                threads: int = 1, min_degree: bool = False) -> SearchReport:
    """Exact ex_k(n, H) with, optionally, every extremal graph up to isomorphism.

    ``canonical=False`` disables orbit pruning (witnesses are then deduplicated
    by canonical form afterwards).  ``min_degree=True`` adds a sound vertex
    degree cut: a graph beating the incumbent minus any vertex is still free.
    """
    _check_caps(H, n, k)
    t0 = time.perf_counter()
    exs = [_ex_value(H, t, k) for t in range(n)]
    cons = _constructions(H, n, k)
    lower = {}
    for name in ("complete", "turan"):
        if name in cons and _is_free(H, cons[name]):
            lower[name] = cons[name].edge_count
    notes = []
    if H.m > n:
        g = MultiplicityGraph(n, k, tuple([k] * comb(n, 2)))
        rep = SearchReport(n, k, pattern_id(H), g.edge_count, (g,), lower, "not-applicable", 0,
                           time.perf_counter() - t0, canonical, True, g.edge_count, ("pattern larger than host",))
        rep.agrees_with_goodness = goodness_verdict(H, n, k, rep)[0]
        return rep
    prev = _ex_solve(H, n - 1, k)[1] if n >= 2 else None
    bar, inc = _incumbent(H, n, k, exs, prev)
    cap = _averaging_cap(n, exs)
    mode = "witness" if witnesses else "value"
    if mode == "value" and bar >= cap:
        nodes, best, found = 0, bar, []
        notes.append("incumbent meets the averaging bound")
    else:
        nodes, best, found = _search(H, n, k, exs, mode, bar, canonical, min_degree, threads)
    if mode == "value":
        wits = (MultiplicityGraph(n, k, found[0][1]),) if found else (inc,)
    else:
        uniq = {}
        for _, w in found:
            g = MultiplicityGraph(n, k, w)
            key = canonical_key(g)
            if key not in uniq:
                perm, _ = canonical_labeling(g.matrix)
                uniq[key] = g.relabel(perm)
        wits = tuple(uniq[key] for key in sorted(uniq))
        if not wits:  # pragma: no cover - the incumbent itself is reachable
            wits = (inc,)
    rep = SearchReport(n, k, pattern_id(H), best, wits, lower, "", nodes, 0.0, canonical,
                       mode == "witness", min(cap, k * comb(n, 2)), tuple(notes))
    rep.agrees_with_goodness = goodness_verdict(H, n, k, rep)[0]
    rep.elapsed = time.perf_counter() - t0
    log.info("ex_%d(%d, %s) = %d after %d nodes", k, n, rep.pattern_id, best, nodes)
    return rep


# ------------------------------------------------------------ explicit oracle

def solve_explicit_bruteforce(H: Pattern, n: int, k: int) -> int:
    """ex_k(n, H) by scanning explicit colorings (multisets of k simple graphs).

    Uses only the matching-based detector, never nesting; feasible for
    ``n <= 4, k <= 3``.
    """
    from itertools import combinations_with_replacement

    from .core import ColoredMultigraph, pairs

    if n > 5 or k > 4:
        raise CapabilityError("explicit enumeration supports n <= 5, k <= 4")
    ps = pairs(n)
    graphs = [frozenset(p for b, p in enumerate(ps) if mask >> b & 1) for mask in range(1 << len(ps))]
    combos = sorted(combinations_with_replacement(range(len(graphs)), k),
                    key=lambda c: -sum(len(graphs[i]) for i in c))
    for c in combos:
        cg = ColoredMultigraph(n, k, tuple(graphs[i] for i in c))
        if find_rainbow(cg, H) is None:
            return sum(len(graphs[i]) for i in c)
    return 0  # pragma: no cover - the empty coloring is free when h >= 1


# ------------------------------------------------------------------- goodness

def formula_branch(H: Pattern, n: int, k: int):
    """``(branch, formula_value)`` or ``(None, None)`` when no formula applies."""
    h = H.h
    if k < h:
        return "degenerate", k * comb(n, 2)
    r = chromatic_number(H)
    if r < 3 or not critical_edges(H):
        return None, None
    if k < k_star(r, h):
        return "complete", (h - 1) * comb(n, 2)
    if r - 1 > n:
        return "turan", k * comb(n, 2)
    return "turan", k * turan_numbers(n, r - 1)[0]


def goodness_verdict(H: Pattern, n: int, k: int, rep: SearchReport):
    """``(verdict, branch, formula_value)`` for a finished report.

    ``match`` needs the exact value and, when witnesses are complete, every
    extremal graph isomorphic to the branch construction (either one when
    ``k = k*``).
    """
    branch, fv = formula_branch(H, n, k)
    if branch is None or branch == "degenerate":
        return "not-applicable", branch, fv
    if rep.value != fv:
        return "deviate", branch, fv
    if rep.witnesses_complete:
        r = chromatic_number(H)
        fams = []
        if branch == "complete" or k == k_star(r, H.h):
            fams.append(complete_family(n, H.h, k))
        if branch == "turan":
            fams.append(turan_family(n, k, r))
        keys = {canonical_key(g) for g in fams}
        if any(canonical_key(g) not in keys for g in rep.witnesses):
            return "deviate", branch, fv
    return "match", branch, fv


@dataclass
class GoodnessResult:
    verdict: str
    branch: str | None
    formula_value: int | None
    report: SearchReport
    degenerate_ok: bool | None = None


def verify_goodness_formula(H: Pattern, n: int, k: int, threads: int = 1) -> GoodnessResult:
    rep = solve_exact(H, n, k, witnesses=True, threads=threads)
    verdict, branch, fv = goodness_verdict(H, n, k, rep)
    deg = rep.value == k * comb(n, 2) if branch == "degenerate" else None
    return GoodnessResult(verdict, branch, fv, rep, deg)


# ------------------------------------------------------------------ stability

@dataclass
class StabilityEntry:
    graph: MultiplicityGraph
    edges: int
    dist_complete: int
    dist_turan: int

    @property
    def nearest(self) -> int:
        return min(self.dist_complete, self.dist_turan)


@dataclass
class StabilityReport:
    n: int
    k: int
    eta: object
    threshold: int
    floor: int
    branch: str
    entries: list

    @property
    def max_distance(self) -> int:
        return max((e.nearest for e in self.entries), default=0)


def _is_maximal(H: Pattern, g: MultiplicityGraph) -> bool:
    plan = plan_for(H)
    mat = [list(r) for r in g.matrix]
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            if mat[u][v] >= g.k:
                continue
            mat[u][v] += 1
            mat[v][u] += 1
            degs = [sum(r) for r in mat]
            hit = contains_through_pair(plan, mat, degs, u, v)
            mat[u][v] -= 1
            mat[v][u] -= 1
            if not hit:
                return False
    return True


def stability_probe(H: Pattern, n: int, k: int, eta=0, threads: int = 1) -> StabilityReport:
    """Maximal free graphs within ``eta * n^2`` of the formula value.

    Each is listed once up to isomorphism with its isomorphism-invariant
    distance to ``(h-1)K_n`` and to ``k T_{r-1}(n)``.
    """
    from fractions import Fraction
    from math import ceil

    if n > 5 or k > 6:
        raise CapabilityError("stability probe supports n <= 5 and k <= 6")
    _check_caps(H, n, k)
    r = chromatic_number(H)
    if H.m != r or r < 3:
        raise InputError("stability probe takes an r-vertex r-chromatic pattern (a reduced H_c)")
    if not critical_edges(H):
        raise InputError("pattern must be color-critical")
    if k < H.h:
        raise InputError("stability probe needs k >= h")
    eta = Fraction(eta)
    branch, threshold = formula_branch(H, n, k)
    floor = max(0, ceil(threshold - eta * n * n))
    exs = [_ex_value(H, t, k) for t in range(n)]
    _, _, found = _search(H, n, k, exs, "enumerate", floor, True, False, threads)
    comp = complete_family(n, H.h, k)
    tur = turan_family(n, k, r)
    seen = {}
    for total, w in found:
        g = MultiplicityGraph(n, k, w)
        key = canonical_key(g)
        if key in seen or not _is_maximal(H, g):
            continue
        seen[key] = StabilityEntry(g, total, symmetric_difference(g, comp, True), symmetric_difference(g, tur, True))
    entries = [seen[key] for key in sorted(seen, key=lambda x: (-sum(x[1]), x))]
    return StabilityReport(n, k, eta, threshold, floor, branch, entries)
