"""JSON documents for graphs and schemes, plus DOT export.

Graph document::

    {"vertices": ["a", ...], "edges": [{"id": 0, "ends": ["a", "b"]}, ...],
     "loops_allowed": false,
     "embedding": {"rotations": {"a": [[0, 0], ...]}, "signature": {"3": -1}}}

Absent signature entries mean +1.  ``dumps`` writes canonical key order so
``dumps(parse(text)) == text`` for canonical input.
"""
from __future__ import annotations

import json
from typing import Optional

from .embedding import EmbeddingScheme
from .errors import InvalidScheme, LHGraphError, ParseError, ValidationError
from .multigraph import Dart, Multigraph


def graph_to_json(g: Multigraph) -> dict:
    return {
        "vertices": list(g.labels),
        "edges": [{"id": e, "ends": [g.labels[a], g.labels[b]]} for e, (a, b) in enumerate(g.ends)],
        "loops_allowed": g.loops_allowed,
    }


def scheme_to_json(s: EmbeddingScheme) -> dict:
    g = s.graph
    return {
        "rotations": {g.labels[v]: [[d.edge, d.end] for d in s.rotation[v]] for v in g.vertices()},
        "signature": {str(e): -1 for e, x in enumerate(s.signature) if x == -1},
    }


def document(g: Multigraph, s: Optional[EmbeddingScheme] = None) -> dict:
    doc = graph_to_json(g)
    if s is not None:
        doc["embedding"] = scheme_to_json(s)
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def graph_from_json(data: dict) -> Multigraph:
    if not isinstance(data, dict):
        raise ValidationError("top level must be an object")
    verts = data.get("vertices")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ValidationError("field 'vertices' must be a list of strings")
    edges = data.get("edges")
    if not isinstance(edges, list):
        raise ValidationError("field 'edges' must be a list")
    loops = data.get("loops_allowed", False)
    if not isinstance(loops, bool):
        raise ValidationError("field 'loops_allowed' must be a boolean")
    by_id = {}
    for k, item in enumerate(edges):
        if not isinstance(item, dict) or not isinstance(item.get("id"), int) or isinstance(item.get("id"), bool):
            raise ValidationError(f"edges[{k}].id must be an integer")
        ends = item.get("ends")
        if not isinstance(ends, list) or len(ends) != 2 or not all(isinstance(x, str) for x in ends):
            raise ValidationError(f"edges[{k}].ends must be a pair of vertex labels")
        if item["id"] in by_id:
            raise ValidationError(f"edge ids: duplicate id {item['id']}")
        by_id[item["id"]] = ends
    if sorted(by_id) != list(range(len(by_id))):
        missing = sorted(set(range(len(by_id))) - set(by_id))
        raise ValidationError(f"edge ids must be 0..{len(by_id) - 1}; missing {missing}, got {sorted(by_id)}")
    index = {}
    for i, v in enumerate(verts):
        if v in index:
            raise ValidationError(f"vertices: duplicate label {v!r}")
        index[v] = i
    pairs = []
    for e in range(len(by_id)):
        a, b = by_id[e]
        if a not in index or b not in index:
            raise ValidationError(f"edges[id={e}].ends references an unknown vertex")
        pairs.append((index[a], index[b]))
    try:
        return Multigraph(verts, pairs, loops)
    except LHGraphError as exc:
        raise ValidationError(f"edges: {exc}") from None


def scheme_from_json(g: Multigraph, data: dict) -> EmbeddingScheme:
    if not isinstance(data, dict) or not isinstance(data.get("rotations"), dict):
        raise ValidationError("field 'embedding.rotations' must be an object")
    rots = data["rotations"]
    rotation = []
    for v in g.vertices():
        lab = g.labels[v]
        seq = rots.get(lab)
        if not isinstance(seq, list):
            raise ValidationError(f"embedding.rotations[{lab!r}] missing or not a list")
        darts = []
        for x in seq:
            if (not isinstance(x, list) or len(x) != 2 or not all(isinstance(y, int) for y in x)
                    or x[1] not in (0, 1)):
                raise ValidationError(f"embedding.rotations[{lab!r}] entries must be [edgeId, end]")
            darts.append(Dart(x[0], x[1]))
        rotation.append(darts)
    extra = set(rots) - set(g.labels)
    if extra:
        raise ValidationError(f"embedding.rotations has unknown vertices {sorted(extra)}")
    sig_data = data.get("signature", {})
    if not isinstance(sig_data, dict):
        raise ValidationError("field 'embedding.signature' must be an object")
    sig = [1] * g.m
    for k, val in sig_data.items():
        try:
            e = int(k)
        except ValueError:
            raise ValidationError(f"embedding.signature key {k!r} is not an edge id") from None
        if not 0 <= e < g.m or val not in (1, -1) or isinstance(val, bool):
            raise ValidationError(f"embedding.signature[{k!r}] must map an edge id to +1 or -1")
        sig[e] = val
    try:
        return EmbeddingScheme(g, rotation, sig)
    except InvalidScheme as exc:
        raise ValidationError(f"embedding: {exc}") from None


def parse_document(text: str) -> tuple[Multigraph, Optional[EmbeddingScheme]]:
    data = _loads(text)
    g = graph_from_json(data)
    s = scheme_from_json(g, data["embedding"]) if "embedding" in data else None
    return g, s


def parse_input(path: Optional[str] = None):
    """Read a graph document from ``path`` or standard input."""
    import sys

    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_document(text)


def to_dot(g: Multigraph, s: Optional[EmbeddingScheme] = None, name: str = "G") -> str:
    """DOT text; parallel edges and loops are separate lines, rotations go in comments."""
    lines = [f"graph {json.dumps(name)} {{"]
    for v in g.vertices():
        lab = json.dumps(g.labels[v])
        if s is not None:
            rot = " ".join(f"{d.edge}.{d.end}" for d in s.rotation[v])
            lines.append(f"  // rotation {g.labels[v]}: {rot}")
        lines.append(f"  {lab};")
    for e, (a, b) in enumerate(g.ends):
        attrs = [f'label="{e}"']
        if s is not None and s.signature[e] == -1:
            attrs.append("style=dashed")
        if a == b:
            attrs.append('color="blue"')
        lines.append(f"  {json.dumps(g.labels[a])} -- {json.dumps(g.labels[b])} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
