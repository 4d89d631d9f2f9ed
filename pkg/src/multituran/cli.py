"""``multituran`` command line.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
error (including usage errors), 3 capability limit exceeded, 4 internal
error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .constructions import FAMILIES
from .core import ColoredMultigraph, MultiplicityGraph, symmetric_difference
from .criticality import reduce_minmax
from .exceptions import CapabilityError, InputError, MultiTuranError
from .nesting import nest, to_multiplicity
from .parallel import default_threads

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAPABILITY = 0, 1, 2, 3

log = logging.getLogger("multituran")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_pattern(path: str):
    name = "" if path == "-" else Path(path).stem
    return formats.parse_pat(_read(path), name)


def _load_host(path: str):
    """CMG or CMGX host, chosen by header."""
    text = _read(path)
    kind = formats.sniff(text)
    if kind == "cmgx":
        return formats.parse_cmgx(text)
    return formats.parse_cmg(text)


def _load_nested(path: str) -> MultiplicityGraph:
    g = _load_host(path)
    if isinstance(g, ColoredMultigraph):
        if not g.is_nested():
            raise InputError(f"{path}: explicit coloring is not nested; run 'nest' first")
        return to_multiplicity(g)
    return g


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _report_json(rep, timing: bool) -> dict:
    out = {
        "n": rep.n, "k": rep.k, "pattern": rep.pattern_id, "value": rep.value,
        "witnesses": [formats.graph_json(g) for g in rep.witnesses],
        "witnesses_complete": rep.witnesses_complete,
        "lower_bounds": rep.lower_bounds,
        "agrees_with_goodness": rep.agrees_with_goodness,
        "nodes_explored": rep.nodes_explored,
    }
    if timing:
        out["elapsed"] = round(rep.elapsed, 6)
    return out


# ---------------------------------------------------------------- commands

def cmd_solve(a) -> int:
    from .search import solve_exact

    H = _load_pattern(a.pattern)
    rep = solve_exact(H, a.n, a.k, witnesses=not a.no_witnesses, canonical=not a.no_canonical,
                      threads=a.threads, min_degree=a.min_degree)
    _write(a.out, formats.dumps({"command": "solve", **_report_json(rep, a.timing)}))
    return EXIT_OK


def cmd_verify_goodness(a) -> int:
    from .search import verify_goodness_formula

    H = _load_pattern(a.pattern)
    rows = []
    for n in _ints(a.n):
        for k in _ints(a.k):
            res = verify_goodness_formula(H, n, k, threads=a.threads)
            rows.append((n, k, res))
    if a.format == "tsv":
        lines = ["n\tk\tvalue\tformula_value\tverdict"]
        for n, k, res in rows:
            fv = "" if res.formula_value is None else res.formula_value
            lines.append(f"{n}\t{k}\t{res.report.value}\t{fv}\t{res.verdict}")
        _write(a.out, "\n".join(lines) + "\n")
    else:
        body = [{"n": n, "k": k, "verdict": r.verdict, "branch": r.branch, "formula_value": r.formula_value,
                 "degenerate_ok": r.degenerate_ok, "report": _report_json(r.report, a.timing)} for n, k, r in rows]
        _write(a.out, formats.dumps({"command": "verify-goodness", "pattern": H.name, "rows": body}))
    return EXIT_NEGATIVE if any(r.verdict == "deviate" for _, _, r in rows) else EXIT_OK


def _detect(g, H):
    from .rainbow import find_rainbow, find_rainbow_nested

    if isinstance(g, ColoredMultigraph) and not g.is_nested():
        return find_rainbow(g, H)
    return find_rainbow_nested(g, H)


def cmd_verify_free(a) -> int:
    g = _load_host(a.graph)
    cert = _detect(g, _load_pattern(a.pattern))
    _write(a.out, formats.dumps({"command": "verify-free", "free": cert is None,
                                 "certificate": formats.certificate_json(cert)}))
    return EXIT_OK if cert is None else EXIT_NEGATIVE


def cmd_find_rainbow(a) -> int:
    g = _load_host(a.graph)
    cert = _detect(g, _load_pattern(a.pattern))
    _write(a.out, formats.dumps(formats.certificate_json(cert)))
    return EXIT_OK if cert is not None else EXIT_NEGATIVE


def cmd_nest(a) -> int:
    g = _load_host(a.graph)
    if isinstance(g, ColoredMultigraph):
        g = to_multiplicity(nest(g))
    _write(a.out, formats.write_cmg(g))
    return EXIT_OK


def cmd_critical(a) -> int:
    rep = reduce_minmax(_load_pattern(a.pattern))
    fr = lambda x: None if x is None else formats.rational(x)  # noqa: E731
    body = {
        "command": "critical", "chi": rep.chi, "h": rep.h,
        "critical_edges": [list(e) for e in rep.critical_edges],
        "is_color_critical": rep.is_color_critical,
        "critical_coloring": list(rep.critical_coloring) if rep.critical_coloring else None,
        "reduced": formats.pattern_json(rep.reduced) if rep.reduced else None,
        "max_mult": rep.max_mult, "k_star": fr(rep.k_star), "alpha_r": fr(rep.alpha_r),
        "fr_bound": fr(rep.fr_bound), "in_Fr": rep.in_Fr,
        "critical_colorings": rep.n_critical_colorings, "notes": list(rep.notes),
    }
    _write(a.out, formats.dumps(body))
    return EXIT_OK if rep.is_color_critical else EXIT_NEGATIVE


def cmd_construct(a) -> int:
    fam = a.family
    if fam == "complete":
        if a.h is None:
            raise InputError("--h is required for the complete family")
        g = FAMILIES[fam](a.n, a.h, a.k)
    else:
        if a.k is None or a.r is None:
            raise InputError(f"--k and --r are required for the {fam} family")
        if fam == "mixed":
            if a.m_cut is None:
                raise InputError("--m-cut is required for the mixed family")
            g = FAMILIES[fam](a.n, a.k, a.r, a.m_cut)
        else:
            g = FAMILIES[fam](a.n, a.k, a.r)
    _write(a.out, formats.write_cmg(g))
    return EXIT_OK


def cmd_friendly(a) -> int:
    from .friendliness import is_H_friendly

    K = _load_nested(a.graph)
    sizes = _ints(a.parts)
    if sum(sizes) != K.n:
        raise InputError(f"part sizes sum to {sum(sizes)} but the host has {K.n} vertices")
    parts, start = [], 0
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    res = is_H_friendly(K, parts, _load_pattern(a.pattern), a.k, exhaustive=a.exhaustive, threads=a.threads)
    body = {"command": "friendly", "friendly": res.friendly, "threshold": res.threshold,
            "checked": res.checked, "witness": list(res.witness) if res.witness else None}
    _write(a.out, formats.dumps(body))
    return EXIT_OK if res.friendly else EXIT_NEGATIVE


def cmd_embed_4cc(a) -> int:
    from .friendliness import schedule_4cc

    case, cert = schedule_4cc(_load_nested(a.graph), _load_pattern(a.pattern), a.k)
    if cert is None:
        _write(a.out, formats.dumps({"command": "embed-4cc", "result": "exceptional", "case": case}))
        return EXIT_NEGATIVE
    body = formats.certificate_json(cert)
    body.update(command="embed-4cc", case=case)
    _write(a.out, formats.dumps(body))
    return EXIT_OK


def cmd_embed_fr(a) -> int:
    from .friendliness import fr_embedding_order

    cert = fr_embedding_order(_load_nested(a.graph), _load_pattern(a.pattern), _ints(a.attach), a.k)
    body = formats.certificate_json(cert)
    body["command"] = "embed-fr"
    _write(a.out, formats.dumps(body))
    return EXIT_OK


def cmd_census(a) -> int:
    from .census import census

    t = census(a.r, a.s, samples=a.samples, seed=a.seed)
    frac = None if t.fr_fraction is None else formats.rational(t.fr_fraction)
    if a.format == "tsv":
        head = "r\ts\tmode\ttotal\tchi_r\tcolor_critical\tin_Fr\thc_ok\tunique_partition\tclasses\tfr_fraction"
        row = f"{t.r}\t{t.s}\t{t.mode}\t{t.total}\t{t.chi_r}\t{t.color_critical}\t{t.in_Fr}\t{t.hc_ok}\t{t.unique_partition}\t{t.classes}\t{frac or ''}"
        _write(a.out, head + "\n" + row + "\n")
    else:
        body = {"command": "census", "r": t.r, "s": t.s, "mode": t.mode, "total": t.total, "chi_r": t.chi_r,
                "color_critical": t.color_critical, "in_Fr": t.in_Fr, "hc_ok": t.hc_ok,
                "unique_partition": t.unique_partition, "classes": t.classes, "fr_fraction": frac}
        _write(a.out, formats.dumps(body))
    return EXIT_OK


def cmd_stability(a) -> int:
    from .search import stability_probe

    try:
        eta = Fraction(a.eta)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--eta must be a rational like 1/25, got {a.eta!r}") from None
    rep = stability_probe(_load_pattern(a.pattern), a.n, a.k, eta, threads=a.threads)
    body = {
        "command": "stability-probe", "n": rep.n, "k": rep.k, "eta": formats.rational(rep.eta),
        "branch": rep.branch, "threshold": rep.threshold, "floor": rep.floor,
        "max_distance": rep.max_distance,
        "graphs": [{"edges": e.edges, "dist_complete": e.dist_complete, "dist_turan": e.dist_turan,
                    "graph": formats.graph_json(e.graph)} for e in rep.entries],
    }
    _write(a.out, formats.dumps(body))
    return EXIT_OK


def cmd_distance(a) -> int:
    g1, g2 = _load_nested(a.graph), _load_nested(a.other)
    if g1.n != g2.n:
        raise InputError("graphs must have the same number of vertices")
    d = symmetric_difference(g1, g2, upto_iso=a.iso)
    _write(a.out, formats.dumps({"command": "distance", "iso": a.iso, "distance": d}))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multituran", description="Exact tools for multicolor Turan problems on small multigraphs.")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: available CPUs)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--out", default="-", help="output path ('-' for stdout)")
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return sp

    sp = add("solve", cmd_solve, "exact ex_k(n, H)")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--no-witnesses", action="store_true", help="value only")
    sp.add_argument("--no-canonical", action="store_true", help="disable isomorphism pruning")
    sp.add_argument("--min-degree", action="store_true", help="enable the vertex-degree cut")
    sp.add_argument("--timing", action="store_true", help="include elapsed seconds")

    sp = add("verify-goodness", cmd_verify_goodness, "compare exact values with the conjectured formulas")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", required=True, help="comma-separated list")
    sp.add_argument("--k", required=True, help="comma-separated list")
    sp.add_argument("--format", choices=("json", "tsv"), default="json")
    sp.add_argument("--timing", action="store_true")

    for name, fn, help_ in (("verify-free", cmd_verify_free, "exit 0 iff the host has no multicolored copy"),
                            ("find-rainbow", cmd_find_rainbow, "print a multicolored copy certificate")):
        sp = add(name, fn, help_)
        sp.add_argument("--graph", required=True, help="CMG or CMGX host")
        sp.add_argument("--pattern", required=True)

    sp = add("nest", cmd_nest, "convert an explicit coloring (CMGX) to nested form (CMG)")
    sp.add_argument("--graph", required=True)

    sp = add("critical", cmd_critical, "chromatic report, H_c, k*, F_r membership")
    sp.add_argument("--pattern", required=True)

    sp = add("construct", cmd_construct, "write a construction as CMG")
    sp.add_argument("--family", choices=sorted(FAMILIES), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--h", type=int)
    sp.add_argument("--m-cut", type=int, dest="m_cut")

    sp = add("friendly", cmd_friendly, "decide H-friendliness of a multipartite host")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--parts", required=True, help="part sizes a,a,...; parts are consecutive vertex blocks")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--exhaustive", action="store_true", help="test every admissible attachment")

    sp = add("embed-4cc", cmd_embed_4cc, "case schedule for 4-vertex 4-color-critical patterns")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--k", type=int)

    sp = add("embed-fr", cmd_embed_fr, "schedule for r-vertex patterns with bounded multiplicities")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--attach", required=True, help="multiplicities from the new vertex, comma-separated")
    sp.add_argument("--k", type=int)

    sp = add("census", cmd_census, "count color-critical graphs and F_r members")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "tsv"), default="json")

    sp = add("stability-probe", cmd_stability, "maximal free graphs near the extremal value")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eta", default="0")

    sp = add("distance", cmd_distance, "symmetric difference of two hosts")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--other", required=True)
    sp.add_argument("--iso", action="store_true", help="minimize over relabelings (n <= 8)")
    return p


def _setup_logging() -> None:
    level = os.environ.get("MULTITURAN_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)


def run(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is None:
            args.threads = default_threads()
        elif args.threads < 1:
            raise InputError("--threads must be at least 1")
        return args.func(args)
    except CapabilityError as exc:
        print(f"multituran: capability limit: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except InputError as exc:
        print(f"multituran: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MultiTuranError as exc:
        print(f"multituran: internal error: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run())
