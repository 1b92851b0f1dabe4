"""Flowers: graphs grown from K2 or K3 by gluing petals at their loop vertex.

A petal is K2 or K3 with one extra loop; gluing identifies an existing vertex
with the petal's loop vertex.  Every flower has exactly ``2n - 3`` edges.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .embedding import EmbeddingScheme
from .errors import BadAttachmentVertex, ValidationError
from .multigraph import Dart, Multigraph, is_connected

PETAL_DELTAS = {"K2o": (1, 2), "K3o": (2, 4)}
BASES = {"K2": 2, "K3": 3}


@dataclass(frozen=True)
class Attachment:
    kind: str
    at: str
    new: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class FlowerDecomposition:
    base: str
    attachments: tuple[Attachment, ...] = ()
    base_labels: Optional[tuple[str, ...]] = None

    def to_json(self) -> dict:
        out = {"base": self.base, "petals": []}
        if self.base_labels is not None:
            out["base_vertices"] = list(self.base_labels)
        for a in self.attachments:
            p = {"kind": a.kind, "at": a.at}
            if a.new is not None:
                p["new"] = list(a.new)
            out["petals"].append(p)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FlowerDecomposition":
        try:
            base = data["base"]
            petals = data.get("petals", [])
            atts = tuple(
                Attachment(p["kind"], str(p["at"]), tuple(str(x) for x in p["new"]) if "new" in p else None)
                for p in petals
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad flower decomposition field: {exc}") from None
        labels = data.get("base_vertices")
        return cls(base, atts, tuple(str(x) for x in labels) if labels is not None else None)


@dataclass
class _Build:
    labels: list[str] = field(default_factory=list)
    ends: list[tuple[int, int]] = field(default_factory=list)
    # per petal: (kind, attachment vertex, loop edge, spoke edges, rim edge or None, new vertices)
    petals: list[tuple] = field(default_factory=list)


def _build(d: FlowerDecomposition) -> _Build:
    if d.base not in BASES:
        raise ValidationError(f"base must be K2 or K3, got {d.base!r}")
    k = BASES[d.base]
    labels = list(d.base_labels) if d.base_labels is not None else [str(i) for i in range(k)]
    if len(labels) != k or len(set(labels)) != k:
        raise ValidationError("base_vertices does not match the base")
    b = _Build(labels)
    b.ends = [(0, 1)] if k == 2 else [(0, 1), (1, 2), (2, 0)]
    index = {lab: i for i, lab in enumerate(labels)}
    counter = 0

    def fresh():
        nonlocal counter
        while str(counter) in index:
            counter += 1
        return str(counter)

    for a in d.attachments:
        if a.kind not in PETAL_DELTAS:
            raise ValidationError(f"petal kind must be K2o or K3o, got {a.kind!r}")
        if a.at not in index:
            raise BadAttachmentVertex(f"attachment vertex {a.at!r} does not exist yet")
        x = index[a.at]
        need = PETAL_DELTAS[a.kind][0]
        names = list(a.new) if a.new is not None else []
        if names and len(names) != need:
            raise ValidationError(f"{a.kind} petal needs {need} new vertex names")
        new = []
        for i in range(need):
            lab = names[i] if names else fresh()
            if lab in index:
                raise ValidationError(f"new vertex name {lab!r} already used")
            index[lab] = len(b.labels)
            b.labels.append(lab)
            new.append(index[lab])
        loop = len(b.ends)
        b.ends.append((x, x))
        spokes = []
        for p in new:
            spokes.append(len(b.ends))
            b.ends.append((x, p))
        rim = None
        if a.kind == "K3o":
            rim = len(b.ends)
            b.ends.append((new[0], new[1]))
        b.petals.append((a.kind, x, loop, spokes, rim, new))
    return b


def build_flower(d: FlowerDecomposition) -> Multigraph:
    b = _build(d)
    return Multigraph(b.labels, b.ends, loops_allowed=True)


def flower_scheme(d: FlowerDecomposition) -> EmbeddingScheme:
    """Genus-0 edge-maximal scheme: every petal sits inside its own loop."""
    b = _build(d)
    g = Multigraph(b.labels, b.ends, loops_allowed=True)
    rot: dict[int, list[Dart]] = {}
    if d.base == "K2":
        rot[0], rot[1] = [Dart(0, 0)], [Dart(0, 1)]
    else:
        rot[0] = [Dart(0, 0), Dart(2, 1)]
        rot[1] = [Dart(1, 0), Dart(0, 1)]
        rot[2] = [Dart(2, 0), Dart(1, 1)]
    for kind, x, loop, spokes, rim, new in b.petals:
        inner = [Dart(loop, 0)] + [Dart(e, 0) for e in spokes] + [Dart(loop, 1)]
        r = rot[x]
        rot[x] = r[:1] + inner + r[1:]
        if kind == "K2o":
            rot[new[0]] = [Dart(spokes[0], 1)]
        else:
            rot[new[0]] = [Dart(spokes[0], 1), Dart(rim, 0)]
            rot[new[1]] = [Dart(spokes[1], 1), Dart(rim, 1)]
    return EmbeddingScheme(g, [rot[v] for v in g.vertices()])


def is_flower(g: Multigraph) -> Optional[FlowerDecomposition]:
    """Decompose by peeling leaf petals with backtracking; None if ``g`` is no flower."""
    if g.n < 2 or g.m != 2 * g.n - 3 or not is_connected(g):
        return None
    failed: set[frozenset] = set()

    def peel(verts: frozenset, edges: frozenset):
        if edges in failed:
            return None
        loops = [e for e in edges if g.ends[e][0] == g.ends[e][1]]
        if not loops:
            if len(verts) == 2 and len(edges) == 1:
                return "K2", []
            if len(verts) == 3 and len(edges) == 3:
                pairs = {frozenset(g.ends[e]) for e in edges}
                if len(pairs) == 3:
                    return "K3", []
            failed.add(edges)
            return None
        loop_at: dict[int, list[int]] = {}
        for e in sorted(loops):
            loop_at.setdefault(g.ends[e][0], []).append(e)
        inc: dict[int, list[int]] = {v: [] for v in verts}
        for e in sorted(edges):
            a, b = g.ends[e]
            inc[a].append(e)
            if a != b:
                inc[b].append(e)

        def other(e, v):
            a, b = g.ends[e]
            return b if a == v else a

        moves = []
        for p in sorted(verts):
            es = inc[p]
            if len(es) == 1 and g.ends[es[0]][0] != g.ends[es[0]][1]:
                x = other(es[0], p)
                if x in loop_at:
                    moves.append(("K2o", x, (p,), {es[0], loop_at[x][0]}))
        for p in sorted(verts):
            for q in sorted(verts):
                if q <= p or len(inc[p]) != 2 or len(inc[q]) != 2:
                    continue
                pq = [e for e in inc[p] if other(e, p) == q]
                if len(pq) != 1:
                    continue
                (xp,) = [e for e in inc[p] if e != pq[0]]
                (xq,) = [e for e in inc[q] if e != pq[0]]
                x = other(xp, p)
                if x in (p, q) or other(xq, q) != x or x not in loop_at:
                    continue
                moves.append(("K3o", x, (p, q), {pq[0], xp, xq, loop_at[x][0]}))
        for kind, x, new, used in moves:
            res = peel(verts - set(new), edges - used)
            if res is not None:
                base, atts = res
                return base, atts + [(kind, x, new)]
        failed.add(edges)
        return None

    res = peel(frozenset(g.vertices()), frozenset(range(g.m)))
    if res is None:
        return None
    base, atts = res
    removed = {v for _, _, new in atts for v in new}
    base_verts = sorted(set(g.vertices()) - removed)
    return FlowerDecomposition(
        base,
        tuple(Attachment(k, g.labels[x], tuple(g.labels[p] for p in new)) for k, x, new in atts),
        tuple(g.labels[v] for v in base_verts),
    )


def random_decomposition(rng: random.Random, max_n: int = 30) -> FlowerDecomposition:
    """A random decomposition whose flower has at most ``max_n`` vertices."""
    base = rng.choice(["K2", "K3"])
    n = BASES[base]
    labels = [str(i) for i in range(n)]
    atts = []
    target = rng.randint(n, max_n)
    while True:
        kind = rng.choice(["K2o", "K3o"])
        dn = PETAL_DELTAS[kind][0]
        if n + dn > target:
            if n + 1 <= target:
                kind, dn = "K2o", 1
            else:
                break
        at = rng.choice(labels)
        atts.append(Attachment(kind, at))
        new = [str(n + i) for i in range(dn)]
        labels += new
        n += dn
    return FlowerDecomposition(base, tuple(atts))
