"""Line-oriented text formats and JSON report encoding.

``cmg 1``  (nested host)      ``n``, ``k``, then ``e u v m`` lines
``cmgx 1`` (explicit colors)  ``n``, ``k``, then ``c u v col1 col2 ...`` lines
``pat 1``  (pattern)          ``n``, ``hmax``, then ``e u v m`` lines

``#`` starts a comment; blank lines are ignored.  Omitted pairs have
multiplicity 0 (no colors); a pair may appear at most once.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import ColoredMultigraph, MultiplicityGraph, Pattern, pairs
from .exceptions import InputError
from .rainbow import EmbeddingCertificate

SCHEMA = 1


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {no}: expected an integer, got {tok!r}") from None


def _parse(text: str, magic: str, second: str, row_tag: str):
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise InputError(f"empty input; expected header '{magic} 1'") from None
    if head != [magic, "1"]:
        raise InputError(f"line {no}: expected header '{magic} 1'")
    fields: dict[str, int] = {}
    rows: dict[tuple[int, int], list[int]] = {}
    for no, toks in it:
        tag = toks[0]
        if tag in ("n", second):
            if len(toks) != 2:
                raise InputError(f"line {no}: '{tag}' takes one value")
            if tag in fields:
                raise InputError(f"line {no}: duplicate '{tag}' line")
            if rows:
                raise InputError(f"line {no}: '{tag}' must precede pair lines")
            fields[tag] = _int(toks[1], no)
            if fields[tag] < 0:
                raise InputError(f"line {no}: '{tag}' must be nonnegative")
        elif tag == row_tag:
            if "n" not in fields or second not in fields:
                raise InputError(f"line {no}: 'n' and '{second}' must precede pair lines")
            if len(toks) < 3 or (row_tag == "e" and len(toks) != 4):
                raise InputError(f"line {no}: malformed '{row_tag}' line")
            u, v = _int(toks[1], no), _int(toks[2], no)
            n = fields["n"]
            if not (0 <= u < v < n):
                raise InputError(f"line {no}: need 0 <= u < v < n, got {u} {v}")
            if (u, v) in rows:
                raise InputError(f"line {no}: duplicate pair {u} {v}")
            rows[(u, v)] = [_int(t, no) for t in toks[3:]]
        else:
            raise InputError(f"line {no}: unknown record '{tag}'")
    for need in ("n", second):
        if need not in fields:
            raise InputError(f"missing '{need}' line")
    return fields, rows


def parse_cmg(text: str) -> MultiplicityGraph:
    fields, rows = _parse(text, "cmg", "k", "e")
    n, k = fields["n"], fields["k"]
    for (u, v), (m,) in rows.items():
        if not 1 <= m <= k:
            raise InputError(f"pair {u} {v}: multiplicity {m} outside 1..{k}")
    return MultiplicityGraph.from_edges(n, k, {p: vals[0] for p, vals in rows.items()})


def write_cmg(g: MultiplicityGraph) -> str:
    out = ["cmg 1", f"n {g.n}", f"k {g.k}"]
    out += [f"e {u} {v} {m}" for u, v, m in g.edges()]
    return "\n".join(out) + "\n"


def parse_cmgx(text: str) -> ColoredMultigraph:
    fields, rows = _parse(text, "cmgx", "k", "c")
    n, k = fields["n"], fields["k"]
    colors: list[set] = [set() for _ in range(k)]
    for (u, v), cols in rows.items():
        if len(set(cols)) != len(cols):
            raise InputError(f"pair {u} {v}: repeated color")
        for c in cols:
            if not 1 <= c <= k:
                raise InputError(f"pair {u} {v}: color {c} outside 1..{k}")
            colors[c - 1].add((u, v))
    return ColoredMultigraph(n, k, tuple(frozenset(c) for c in colors))


def write_cmgx(g: ColoredMultigraph) -> str:
    out = ["cmgx 1", f"n {g.n}", f"k {g.k}"]
    for u, v in pairs(g.n):
        cols = sorted(g.colors_at(u, v))
        if cols:
            out.append(f"c {u} {v} " + " ".join(map(str, cols)))
    return "\n".join(out) + "\n"


def parse_pat(text: str, name: str = "") -> Pattern:
    fields, rows = _parse(text, "pat", "hmax", "e")
    n = fields["n"]
    if n < 1:
        raise InputError("pattern needs at least one vertex")
    for (u, v), (m,) in rows.items():
        if m < 1:
            raise InputError(f"pair {u} {v}: multiplicity must be positive")
    return Pattern.from_edges(n, {p: vals[0] for p, vals in rows.items()}, name)


def write_pat(H: Pattern) -> str:
    out = ["pat 1", f"n {H.m}", f"hmax {max(H.w, default=0)}"]
    out += [f"e {u} {v} {m}" for u, v, m in H.edges()]
    return "\n".join(out) + "\n"


def sniff(text: str) -> str:
    """Header keyword of a text file (``cmg``, ``cmgx`` or ``pat``)."""
    for _, toks in _lines(text):
        return toks[0]
    return ""


# ---------------------------------------------------------------------- JSON

def rational(x) -> str:
    """Exact ``"p/q"`` string for an int or Fraction."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def graph_json(g) -> dict:
    return {"n": g.n, "k": getattr(g, "k", None), "edges": [[u, v, m] for u, v, m in g.edges()]}


def pattern_json(H: Pattern) -> dict:
    return {"m": H.m, "h": H.h, "name": H.name, "edges": [[u, v, m] for u, v, m in H.edges()]}


def certificate_json(cert: EmbeddingCertificate | None) -> dict:
    if cert is None:
        return {"result": "free"}
    out: dict[str, Any] = {"result": "found", "phi": list(cert.phi)}
    if cert.order is not None:
        out["order"] = [list(e) for e in cert.order]
        out["prefix_sums"] = list(cert.prefix_sums or ())
    if cert.colors is not None:
        out["colors"] = [[x, y, list(cs)] for (x, y), cs in sorted(cert.colors.items())]
    return out


def certificate_from_json(obj: dict) -> EmbeddingCertificate | None:
    if obj.get("result") == "free":
        return None
    try:
        phi = tuple(int(v) for v in obj["phi"])
    except (KeyError, TypeError, ValueError):
        raise InputError("certificate needs an integer list 'phi'") from None
    order = tuple(tuple(e) for e in obj["order"]) if "order" in obj else None
    sums = tuple(obj["prefix_sums"]) if "prefix_sums" in obj else None
    colors = {(int(x), int(y)): tuple(cs) for x, y, cs in obj["colors"]} if "colors" in obj else None
    return EmbeddingCertificate(phi, order, sums, colors)


def dumps(obj: dict) -> str:
    body = {"schema": SCHEMA}
    body.update(obj)
    return json.dumps(body, indent=2, sort_keys=False) + "\n"
