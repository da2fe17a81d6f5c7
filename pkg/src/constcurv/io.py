"""Edge lists, facet JSON, energy and family files, JSON and DOT output.

Rationals always travel as ``"num/den"`` strings in lowest terms.  Floating
point values only appear inside an ``"approx"`` object.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .complex import Graph, SimplicialComplex, build_clique_complex
from .curvature import DistributionFamily
from .errors import ParseError

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    den = int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def _order_labels(labels: list[str]) -> list:
    if all(re.fullmatch(r"-?\d+", s) for s in labels):
        return sorted({int(s) for s in labels})
    return labels


def parse_edge_list(text: str) -> Graph:
    """Graph from ``u v`` lines.

    ``#`` starts a comment; blank lines are skipped; a line holding a single
    token declares an isolated vertex.  Integer labels are numbered in
    increasing order, other labels by first appearance.
    """
    seen: dict[str, None] = {}
    raw_edges: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) > 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        for t in tok:
            seen.setdefault(t, None)
        if len(tok) == 2:
            u, v = tok
            if u == v:
                raise ParseError(f"self-loop at {u!r}", lineno)
            raw_edges.append((u, v, lineno))
    labels = _order_labels(list(seen))
    ids = {str(lab): i for i, lab in enumerate(labels)}
    edges, owner = [], {}
    for u, v, lineno in raw_edges:
        a, b = ids[u], ids[v]
        key = (min(a, b), max(a, b))
        if key in owner:
            raise ParseError(f"duplicate edge {u} {v} (first on line {owner[key]})", lineno)
        owner[key] = lineno
        edges.append(key)
    return Graph.from_edges(len(labels), edges, labels=labels)


def emit_edge_list(g: Graph) -> str:
    lines = [f"# {g.n} vertices, {len(g.edges)} edges"]
    touched = {v for e in g.edges for v in e}
    lines += [str(g.label(v)) for v in range(g.n) if v not in touched]
    lines += [f"{g.label(u)} {g.label(v)}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


@dataclass
class Loaded:
    """An input file: the complex plus the label of every dense vertex id."""

    complex: SimplicialComplex
    labels: list
    graph: Graph | None = None

    def label(self, v: int):
        return self.labels[v]

    def vertex_id(self, label) -> int:
        key = str(label)
        for i, lab in enumerate(self.labels):
            if str(lab) == key:
                return i
        raise ParseError(f"unknown vertex label {label!r}")

    def simplex(self, labels) -> tuple[int, ...]:
        x = tuple(sorted(self.vertex_id(lab) for lab in labels))
        if x not in self.complex.index:
            raise ParseError(f"{list(labels)} is not a simplex of the input")
        return x


def complex_to_json(c: SimplicialComplex, labels=None) -> dict:
    lab = (lambda v: v) if labels is None else (lambda v: labels[v])
    return {"vertices": [lab(v) for v in c.vertices],
            "facets": [[lab(v) for v in x] for x in c.facets()]}


def complex_from_json(obj) -> Loaded:
    try:
        vertices = list(obj["vertices"])
        facets = obj["facets"]
    except (KeyError, TypeError):
        raise ParseError("facet JSON needs 'vertices' and 'facets'") from None
    ids = {str(v): i for i, v in enumerate(vertices)}
    if len(ids) != len(vertices):
        raise ParseError("duplicate vertex label")
    faces = []
    for f in facets:
        try:
            faces.append([ids[str(v)] for v in f])
        except KeyError as exc:
            raise ParseError(f"facet uses undeclared vertex {exc.args[0]}") from None
        if len(set(faces[-1])) != len(faces[-1]):
            raise ParseError(f"facet {f} repeats a vertex")
    c = SimplicialComplex.from_facets(faces, vertices=range(len(vertices)))
    return Loaded(c, vertices, c.one_skeleton())


def load_input(path: str) -> Loaded:
    """Read an edge list (clique complex taken) or facet JSON (complex as given)."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return complex_from_json(obj)
    g = parse_edge_list(text)
    return Loaded(build_clique_complex(g), list(g.labels), g)


def _simplex_key(key) -> list[str]:
    if isinstance(key, list):
        return [str(k) for k in key]
    return [t for t in re.split(r"[\s,\[\]()]+", str(key)) if t]


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.lineno) from None


def load_energy(path: str, loaded: Loaded) -> dict:
    """Energy file: ``{"a,b": "num/den", ...}``; omitted simplices default to omega."""
    from .curvature import complete_energy

    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise ParseError("energy file must be a JSON object")
    partial = {loaded.simplex(_simplex_key(k)): parse_rational(v) for k, v in obj.items()}
    return complete_energy(loaded.complex, partial)


def load_family(path: str, loaded: Loaded) -> DistributionFamily:
    """Family file: a ``solve`` output, a list of ``{"simplex", "shares"}``, or ``{"a,b": [...]}``."""
    obj = _read_json(path)
    if isinstance(obj, dict) and "family" in obj:
        obj = obj["family"]
    if isinstance(obj, dict):
        entries = [(k, v) for k, v in obj.items()]
    elif isinstance(obj, list):
        try:
            entries = [(e["simplex"], e["shares"]) for e in obj]
        except (KeyError, TypeError):
            raise ParseError("family entries need 'simplex' and 'shares'") from None
    else:
        raise ParseError("unrecognised family file")
    dist = {}
    for key, shares in entries:
        labels = _simplex_key(key)
        x = loaded.simplex(labels)
        if len(shares) != len(labels):
            raise ParseError(f"simplex {labels} needs {len(labels)} shares")
        # shares are listed in the order the labels were written
        by_vertex = {loaded.vertex_id(lab): parse_rational(s) for lab, s in zip(labels, shares)}
        dist[x] = [by_vertex[v] for v in x]
    try:
        return DistributionFamily(dist)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def family_to_json(family: DistributionFamily, labels, exact: bool = True) -> list:
    fmt = format_rational if exact else float
    return [{"simplex": [labels[v] for v in x], "shares": [fmt(s) for s in p]}
            for x, p in sorted(family.dist.items(), key=lambda kv: (len(kv[0]), kv[0]))]


def vertex_map_json(values: dict, labels, kind: str = "rational") -> dict:
    fmt = {"rational": format_rational, "float": float, "int": int}[kind]
    return {str(labels[v]): fmt(k) for v, k in values.items()}


def _finite(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def emit_json(result: dict) -> str:
    """Pretty JSON; NaN and infinities (e.g. a one-sample stderr) become null."""
    return json.dumps(_finite(result), indent=2, allow_nan=False) + "\n"


def _dot_id(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: Graph, k: dict | None = None, name: str = "G") -> str:
    """Undirected DOT graph; with ``k`` every vertex label carries its curvature."""
    lines = [f"graph {_dot_id(name)} {{"]
    for v in range(g.n):
        lab = str(g.label(v))
        if k is not None and v in k:
            val = k[v]
            text = format_rational(val) if isinstance(val, (int, Fraction)) else f"{val:.6g}"
            label = _dot_id(lab)[:-1] + "\\nK=" + text + '"'
            lines.append(f"  {_dot_id(lab)} [label={label}];")
        else:
            lines.append(f"  {_dot_id(lab)};")
    for u, v in g.sorted_edges():
        lines.append(f"  {_dot_id(g.label(u))} -- {_dot_id(g.label(v))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("constcurv").joinpath("schema.json").read_text())
