"""Text and structured-document formats for diagrams, patterns, framed
links and string links.

Diagram text: whitespace-separated ``X[a,b,c,d]`` tokens, a ``C[(...)]``
component block (optional when the standard consecutive numbering makes
the partition unambiguous), and an optional ``N[...]`` name block.
Pattern files add ``CUT[(edge,sign),...]``; framed links ``F[f1,...]``
with an optional role block ``R[...]``; string links use ``SL[m]`` with
``P[(...),...]`` strand paths and an optional ``DIR[+,-,...]`` block.

The serializer always relabels through the canonical form, so emitted
text is deterministic and parse(serialize(d)) reproduces the canonical
representative.
"""

from __future__ import annotations

import json
import re

from .diagram import Diagram, canonical
from .errors import ParseError
from .patterns import Pattern
from .stringlinks import InfectionOperator, StringLink
from .surgery import FramedLink

_TOKEN = re.compile(r"([A-Z]+)\[([^\]]*)\]")


def _blocks(text):
    out = []
    pos = 0
    for m in _TOKEN.finditer(text):
        between = text[pos:m.start()]
        if between.strip():
            raise ParseError(f"unexpected text {between.strip()!r}", position=pos)
        out.append((m.group(1), m.group(2), m.start()))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected trailing text {text[pos:].strip()!r}", position=pos)
    return out


def _ints(body, position):
    if not body.strip():
        return []
    try:
        return [int(tok) for tok in body.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {body!r}", position=position) from exc


def _tuples(body, position):
    out = []
    for m in re.finditer(r"\(([^()]*)\)", body):
        out.append(tuple(_ints(m.group(1), position)))
    leftover = re.sub(r"\(([^()]*)\)", "", body).replace(",", "").strip()
    if leftover:
        raise ParseError(f"malformed tuple block {body!r}", position=position)
    return out


def _infer_components(crossings, position):
    """Partition by strand continuation, ordering each cycle by the
    standard consecutive-label convention."""
    parent = {}

    def find(e):
        while parent.get(e, e) != e:
            parent[e] = parent.get(parent[e], parent[e])
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b, c, d in crossings:
        for e in (a, b, c, d):
            parent.setdefault(e, e)
        union(a, c)
        union(b, d)
    groups = {}
    for e in parent:
        groups.setdefault(find(e), []).append(e)
    comps = [tuple(sorted(g)) for g in groups.values()]
    comps.sort(key=lambda g: g[0])
    return tuple(comps)


def parse_diagram(text: str) -> Diagram:
    crossings = []
    components = None
    names = None
    for kind, body, pos in _blocks(text):
        if kind == "X":
            vals = _ints(body, pos)
            if len(vals) != 4:
                raise ParseError("crossings take four edge labels", position=pos)
            crossings.append(tuple(vals))
        elif kind == "C":
            components = tuple(_tuples(body, pos))
        elif kind == "N":
            names = tuple(t.strip() for t in body.split(",")) if body.strip() else ()
        else:
            raise ParseError(f"unknown block {kind}", position=pos)
    if components is None:
        if not crossings:
            raise ParseError("no crossings and no component block", position=0)
        components = _infer_components(crossings, 0)
    return Diagram(tuple(crossings), components, names)


def serialize_diagram(d: Diagram) -> str:
    c = canonical(d)
    parts = [f"X[{a},{b},{cc},{dd}]" for a, b, cc, dd in c.crossings]
    parts.append("C[" + ",".join("(" + ",".join(map(str, cyc)) + ")" for cyc in c.components) + "]")
    if d.names:
        parts.append("N[" + ",".join(d.names) + "]")
    return " ".join(parts)


def _signed(s):
    return f"+{s}" if s > 0 else str(s)


def parse_pattern(text: str) -> Pattern:
    cut = None
    rest = []
    for kind, body, pos in _blocks(text):
        if kind == "CUT":
            cut = [tuple(t) for t in _tuples(body, pos)]
        else:
            rest.append(f"{kind}[{body}]")
    if cut is None:
        raise ParseError("pattern file needs a CUT block", position=0)
    base = parse_diagram(" ".join(rest))
    return Pattern(base, tuple(cut))


def serialize_pattern(p: Pattern) -> str:
    # push the cut through the canonical relabeling via a marked walk
    from .patterns import _pattern_key

    cr, comps, cut = _pattern_key(p)
    parts = [f"X[{a},{b},{c},{d}]" for a, b, c, d in cr]
    parts.append("C[" + ",".join("(" + ",".join(map(str, cyc)) + ")" for cyc in comps) + "]")
    parts.append("CUT[" + ",".join(f"({e},{_signed(s)})" for e, s in cut) + "]")
    return " ".join(parts)


def parse_framed_link(text: str) -> FramedLink:
    framings = None
    roles = None
    rest = []
    for kind, body, pos in _blocks(text):
        if kind == "F":
            framings = tuple(_ints(body, pos))
        elif kind == "R":
            roles = tuple(t.strip() for t in body.split(",")) if body.strip() else ()
        else:
            rest.append(f"{kind}[{body}]")
    if framings is None:
        raise ParseError("framed link file needs an F block", position=0)
    d = parse_diagram(" ".join(rest))
    return FramedLink(d, framings, roles)


def serialize_framed_link(fl: FramedLink) -> str:
    out = serialize_diagram(fl.diagram)
    out += " F[" + ",".join(str(f) for f in fl.framings) + "]"
    if fl.roles:
        out += " R[" + ",".join(fl.roles) + "]"
    return out


def parse_string_link(text: str) -> StringLink:
    m = None
    crossings = []
    paths = None
    directions = None
    cut = None
    for kind, body, pos in _blocks(text):
        if kind == "SL":
            m = _ints(body, pos)[0]
        elif kind == "X":
            vals = _ints(body, pos)
            if len(vals) != 4:
                raise ParseError("crossings take four edge labels", position=pos)
            crossings.append(tuple(vals))
        elif kind == "P":
            paths = tuple(_tuples(body, pos))
        elif kind == "DIR":
            directions = tuple(1 if t.strip() == "+" else -1 for t in body.split(","))
        elif kind == "CUT":
            cut = [tuple(t) for t in _tuples(body, pos)]
        else:
            raise ParseError(f"unknown block {kind}", position=pos)
    if m is None or paths is None:
        raise ParseError("string link file needs SL and P blocks", position=0)
    sl = StringLink(m, tuple(crossings), paths, directions or ())
    if cut is not None:
        return InfectionOperator(sl, tuple(cut))
    return sl


def serialize_string_link(obj) -> str:
    if isinstance(obj, InfectionOperator):
        sl, cut = obj.link, obj.cut
    else:
        sl, cut = obj, None
    parts = [f"SL[{sl.strand_count}]"]
    parts.extend(f"X[{a},{b},{c},{d}]" for a, b, c, d in sl.crossings)
    parts.append("P[" + ",".join("(" + ",".join(map(str, p)) + ")" for p in sl.strands) + "]")
    if any(d < 0 for d in sl.directions):
        parts.append("DIR[" + ",".join("+" if d > 0 else "-" for d in sl.directions) + "]")
    if cut is not None:
        parts.append("CUT[" + ",".join(f"({e},{_signed(s)})" for e, s in cut) + "]")
    return " ".join(parts)


# -- structured (JSON) forms ----------------------------------------------------


def diagram_to_obj(d: Diagram):
    c = canonical(d)
    obj = {"type": "diagram", "crossings": [list(x) for x in c.crossings],
           "components": [list(cyc) for cyc in c.components]}
    if d.names:
        obj["names"] = list(d.names)
    return obj


def pattern_to_obj(p: Pattern):
    from .patterns import _pattern_key

    cr, comps, cut = _pattern_key(p)
    return {
        "type": "pattern",
        "crossings": [list(x) for x in cr],
        "components": [list(cyc) for cyc in comps],
        "cut": [list(e) for e in cut],
    }


def framed_link_to_obj(fl: FramedLink):
    obj = diagram_to_obj(fl.diagram)
    obj["type"] = "framed-link"
    obj["framings"] = list(fl.framings)
    if fl.roles:
        obj["roles"] = list(fl.roles)
    return obj


def string_link_to_obj(obj_in) -> dict:
    if isinstance(obj_in, InfectionOperator):
        sl, cut = obj_in.link, obj_in.cut
    else:
        sl, cut = obj_in, None
    obj = {
        "type": "string-link",
        "strand_count": sl.strand_count,
        "crossings": [list(x) for x in sl.crossings],
        "strands": [list(p) for p in sl.strands],
        "directions": list(sl.directions),
    }
    if cut is not None:
        obj["type"] = "infection-operator"
        obj["cut"] = [list(e) for e in cut]
    return obj


def satellite_fixture_to_obj(pattern: Pattern, companion: Diagram, declared: Diagram):
    """A declared satellite triple, for corpus cross-checks."""
    return {
        "type": "satellite-fixture",
        "pattern": pattern_to_obj(pattern),
        "companion": diagram_to_obj(companion),
        "satellite": diagram_to_obj(declared),
    }


def obj_to_any(obj):
    kind = obj.get("type")
    if kind == "diagram":
        return Diagram(
            tuple(tuple(x) for x in obj["crossings"]),
            tuple(tuple(c) for c in obj["components"]),
            tuple(obj["names"]) if obj.get("names") else None,
        )
    if kind == "pattern":
        base = Diagram(
            tuple(tuple(x) for x in obj["crossings"]),
            tuple(tuple(c) for c in obj["components"]),
        )
        return Pattern(base, tuple(tuple(e) for e in obj["cut"]))
    if kind == "framed-link":
        d = Diagram(
            tuple(tuple(x) for x in obj["crossings"]),
            tuple(tuple(c) for c in obj["components"]),
        )
        return FramedLink(d, tuple(obj["framings"]), tuple(obj["roles"]) if obj.get("roles") else None)
    if kind in ("string-link", "infection-operator"):
        sl = StringLink(
            obj["strand_count"],
            tuple(tuple(x) for x in obj["crossings"]),
            tuple(tuple(p) for p in obj["strands"]),
            tuple(obj.get("directions", ())),
        )
        if kind == "infection-operator":
            return InfectionOperator(sl, tuple(tuple(e) for e in obj["cut"]))
        return sl
    raise ParseError(f"unknown document type {kind!r}")


_PARSERS = {
    ".pd": parse_diagram,
    ".pat": parse_pattern,
    ".fl": parse_framed_link,
    ".sl": parse_string_link,
}


def load_path(path):
    """Parse a file by extension; .json files carry the structured form."""
    import pathlib

    p = pathlib.Path(path)
    text = p.read_text()
    if p.suffix == ".json" or text.lstrip().startswith("{"):
        return obj_to_any(json.loads(text))
    parser = _PARSERS.get(p.suffix)
    if parser is None:
        raise ParseError(f"unknown file extension {p.suffix!r} for {path}")
    return parser(text)
