"""Spherical triangulations of locally Hamiltonian multigraphs.

``reconstruct_triangulation`` embeds a connected locally Hamiltonian graph with
exactly ``3n - 6`` edges by recursive reduction on a vertex of degree at most
five, re-inserting the vertex into the triangulation found for the smaller
graph.  ``oracle_embed`` is an independent brute-force search used to check it.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .embedding import EmbeddingScheme, FacialWalk, euler_genus, is_sphere_triangulation, trace_faces
from .errors import (
    Disconnected,
    EdgeCountMismatch,
    HasLoops,
    NotACycle,
    NotGenusZero,
    NotLocallyHamiltonian,
    PreconditionViolated,
    ReconstructionFailed,
    TooLarge,
)
from .hamiltonian import is_lh, iter_dart_orderings
from .multigraph import Dart, Multigraph, is_connected, is_simple_vertex

log = logging.getLogger(__name__)

ORACLE_CAP = 8
RECURSION_BUDGET = 200_000


# ---------------------------------------------------------------------------
# rotation-map surgery on plain dicts: rot[v] = list of Dart, ends[e] = (a, b)

def _head(ends, d: Dart) -> int:
    return ends[d.edge][1 - d.end]


def _tail(ends, d: Dart) -> int:
    return ends[d.edge][d.end]


def _faces(rot: dict, ends: dict) -> list[list[Dart]]:
    """Faces of an all-positive rotation map, each as a dart list starting at its least dart."""
    succ = {}
    for v, r in rot.items():
        k = len(r)
        for i, d in enumerate(r):
            succ[d] = r[(i + 1) % k]
    seen = set()
    out = []
    for d0 in sorted(succ):
        if d0 in seen:
            continue
        face = []
        d = d0
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = succ[d.partner]
        out.append(face)
    return out


def _delete_edge(rot: dict, e: int):
    for v in rot:
        rot[v] = [d for d in rot[v] if d.edge != e]


def _dart_at(ends, e: int, w: int) -> Dart:
    a, b = ends[e]
    return Dart(e, 0) if a == w else Dart(e, 1)


def _insert_before(rot: dict, w: int, anchor: Dart, new: Dart):
    r = rot[w]
    r.insert(r.index(anchor), new)


def _insert_vertex(rot: dict, ends: dict, face: Sequence[Dart], v: int, v_edges: Sequence[int]):
    """Place ``v`` inside ``face`` joined to every corner.

    ``v_edges`` are the edges of ``v``; each corner takes the least unused
    edge towards its vertex.
    """
    pools: dict[int, list[int]] = {}
    for e in sorted(v_edges):
        a, b = ends[e]
        pools.setdefault(b if a == v else a, []).append(e)
    chosen = []
    for d in face:
        w = _tail(ends, d)
        eps = pools[w].pop(0)
        chosen.append(eps)
        _insert_before(rot, w, d, _dart_at(ends, eps, w))
    rot[v] = [_dart_at(ends, e, v) for e in reversed(chosen)]


def _insert_parallel(rot: dict, ends: dict, new: int, old: int) -> list[Dart]:
    """Insert ``new`` beside ``old`` so that the two bound a 2-gon; return that 2-gon."""
    x, y = ends[old]
    dx, dy = Dart(old, 0), Dart(old, 1)
    nx, ny = _dart_at(ends, new, x), _dart_at(ends, new, y)
    r = rot[x]
    r.insert(r.index(dx) + 1, nx)
    _insert_before(rot, y, dy, ny)
    return [nx, dy]


def _face_key(face: Sequence[Dart]) -> tuple:
    f = tuple(face)
    return min(f[i:] + f[:i] for i in range(len(f)))


# ---------------------------------------------------------------------------
# trace

@dataclass
class ReconstructionTrace:
    """Surgery steps in application order (base first) plus search telemetry."""

    steps: list[dict] = field(default_factory=list)
    attempts: int = 0
    backtracks: int = 0

    def to_json(self, g: Multigraph) -> list[dict]:
        out = []
        for st in self.steps:
            params = dict(st["params"])
            for key in ("v1", "v2"):
                if key in params:
                    params[key] = g.labels[params[key]]
            if "vertices" in params:
                params["vertices"] = [g.labels[x] for x in params["vertices"]]
            if "helpers" in params:
                params["helpers"] = [[h, g.labels[a], g.labels[b]] for h, a, b in params["helpers"]]
            vertex = g.labels[st["vertex"]] if st["vertex"] is not None else None
            out.append({"case": st["case"], "vertex": vertex, "params": params})
        return out

    @classmethod
    def from_json(cls, g: Multigraph, data: list[dict]) -> "ReconstructionTrace":
        steps = []
        for st in data:
            params = dict(st["params"])
            for key in ("v1", "v2"):
                if key in params:
                    params[key] = g.index(params[key])
            if "vertices" in params:
                params["vertices"] = [g.index(x) for x in params["vertices"]]
            if "helpers" in params:
                params["helpers"] = [[int(h), g.index(a), g.index(b)] for h, a, b in params["helpers"]]
            if "face" in params:
                params["face"] = [list(x) for x in params["face"]]
            vertex = g.index(st["vertex"]) if st.get("vertex") is not None else None
            steps.append({"case": st["case"], "vertex": vertex, "params": params})
        return cls(steps)


def _apply_step(rot: dict, ends: dict, step: dict) -> None:
    case, v, p = step["case"], step["vertex"], step["params"]
    if case == "base":
        a, b, c = p["vertices"]
        e_ab, e_bc, e_ca = p["edges"]
        rot.clear()
        rot[a] = [_dart_at(ends, e_ab, a), _dart_at(ends, e_ca, a)]
        rot[b] = [_dart_at(ends, e_bc, b), _dart_at(ends, e_ab, b)]
        rot[c] = [_dart_at(ends, e_ca, c), _dart_at(ends, e_bc, c)]
    elif case == "d2":
        gon = _insert_parallel(rot, ends, p["e1"], p["e2"])
        _insert_vertex(rot, ends, gon, v, p["v_edges"])
    elif case == "d3":
        face = [Dart(e, end) for e, end in p["face"]]
        _insert_vertex(rot, ends, face, v, p["v_edges"])
    elif case in ("d4", "d5"):
        for h, _, _ in p["helpers"]:
            _delete_edge(rot, h)
        face = _merged_face(rot, ends)
        if face is None:
            raise ReconstructionFailed(f"replay: no unique merged face for vertex {v}")
        _insert_vertex(rot, ends, face, v, p["v_edges"])
    else:
        raise ValueError(f"unknown case {case!r}")


def _merged_face(rot, ends) -> list[Dart] | None:
    big = [f for f in _faces(rot, ends) if len(f) != 3]
    if len(big) != 1:
        return None
    return big[0]


def replay_trace(g: Multigraph, trace: ReconstructionTrace) -> EmbeddingScheme:
    """Rebuild the scheme by applying the recorded surgeries from the base case."""
    ends = {e: g.ends[e] for e in range(g.m)}
    for st in trace.steps:
        for h, a, b in st["params"].get("helpers", ()):
            ends[h] = (a, b)
    rot: dict = {}
    for st in trace.steps:
        _apply_step(rot, ends, st)
    return EmbeddingScheme(g, [rot[v] for v in g.vertices()])


# ---------------------------------------------------------------------------
# reconstruction

class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.calls = 0
        self.backtracks = 0
        self.failed: set = set()
        self.next_helper = 0
        self.pendant_double_seen = False


def _local_graph(verts: Sequence[int], edges: dict) -> tuple[Multigraph, list[int], list[int]]:
    vmap = sorted(verts)
    where = {v: i for i, v in enumerate(vmap)}
    emap = sorted(edges)
    g = Multigraph([str(v) for v in vmap], [(where[edges[e][0]], where[edges[e][1]]) for e in emap])
    return g, vmap, emap


def _vertex_rank(g: Multigraph, v: int) -> tuple:
    d = g.degree(v)
    heads = [g.head(x) for x in g.darts_at(v)]
    multi = sum(1 for w in heads if g.multiplicity(v, w) > 1)
    order = next(iter_dart_orderings(g, v, "maximal"), None)
    consecutive = set()
    if order:
        hs = [g.head(x) for x in order]
        for i in range(len(hs)):
            a, b = hs[i], hs[(i + 1) % len(hs)]
            if a != b:
                consecutive.add(frozenset((a, b)))
    nb = g.neighbors(v)
    chords = sum(
        1 for a, b in g.ends if a in nb and b in nb and a != b and frozenset((a, b)) not in consecutive
    )
    nonsimple = sum(1 for w in nb if not is_simple_vertex(g, w))
    return (0 if d <= 3 else 1, multi, chords, nonsimple, d)


def _reconstruct(verts: frozenset, edges: dict, search: _Search, trace_steps: list):
    key = frozenset(edges.items())
    if key in search.failed:
        return None
    search.calls += 1
    if search.calls > search.budget:
        raise ReconstructionFailed("backtracking budget exhausted", tag="budget")
    n = len(verts)
    g, vmap, emap = _local_graph(verts, edges)
    if not is_connected(g) or not is_lh(g):
        search.failed.add(key)
        return None
    if n == 3:
        pairs = Counter(frozenset(edges[e]) for e in edges)
        if len(edges) == 3 and len(pairs) == 3 and all(len(p) == 2 for p in pairs):
            a, b, c = sorted(verts)
            find = {p: e for e, p in ((e, frozenset(edges[e])) for e in edges)}
            step = {
                "case": "base",
                "vertex": None,
                "params": {
                    "vertices": [a, b, c],
                    "edges": [find[frozenset((a, b))], find[frozenset((b, c))], find[frozenset((c, a))]],
                },
            }
            rot: dict = {}
            _apply_step(rot, edges, step)
            trace_steps.append(step)
            return rot
        search.failed.add(key)
        return None

    ranked = sorted(
        (v for v in g.vertices() if g.degree(v) <= 5),
        key=lambda v: (_vertex_rank(g, v), vmap[v]),
    )
    for lv in ranked:
        v = vmap[lv]
        for attempt in _attempts(g, lv, vmap, emap, edges, search):
            sub_verts, sub_edges, finish = attempt
            mark = len(trace_steps)
            rot = _reconstruct(sub_verts, sub_edges, search, trace_steps)
            if rot is not None:
                all_ends = dict(sub_edges)
                all_ends.update(edges)
                step = finish(rot, all_ends)
                if step is not None:
                    trace_steps.append(step)
                    return rot
            del trace_steps[mark:]
            search.backtracks += 1
    search.failed.add(key)
    return None


def _attempts(g: Multigraph, lv: int, vmap, emap, edges: dict, search: _Search):
    """Yield (sub-vertices, sub-edges, finisher) reductions for vertex ``lv``."""
    v = vmap[lv]
    d = g.degree(lv)
    darts = g.darts_at(lv)
    v_edges = [emap[x.edge] for x in darts]
    heads = [vmap[g.head(x)] for x in darts]
    rest_verts = frozenset(vmap) - {v}
    rest_edges = {e: p for e, p in edges.items() if v not in p}

    if d == 2:
        if heads[0] == heads[1]:
            search.pendant_double_seen = True
            log.warning("degree-2 vertex %s with both darts to one neighbour", v)
            return
        for i in (0, 1):
            lv1 = g.head(darts[i])
            lv2 = g.head(darts[1 - i])
            if g.degree(lv1) < 3:
                continue
            vv1 = darts[i].edge
            tried = set()
            for order in iter_dart_orderings(g, lv1, "maximal"):
                k = len(order)
                pos = next(j for j, x in enumerate(order) if x.edge == vv1)
                before, after = order[pos - 1], order[(pos + 1) % k]
                if before.edge == after.edge or g.head(before) != lv2 or g.head(after) != lv2:
                    continue
                e1, e2 = emap[before.edge], emap[after.edge]
                if (e1, e2) in tried:
                    continue
                tried.add((e1, e2))
                sub_edges = {e: p for e, p in rest_edges.items() if e != e1}
                params = {"v1": vmap[lv1], "v2": vmap[lv2], "e1": e1, "e2": e2, "v_edges": v_edges}

                def finish(rot, ends, params=params):
                    step = {"case": "d2", "vertex": v, "params": params}
                    _apply_step(rot, ends, step)
                    return step

                yield rest_verts, sub_edges, finish
        return

    if d == 3:
        if len(set(heads)) != 3:
            return
        target = set(heads)

        def finish(rot, ends):
            cands = []
            for f in _faces(rot, ends):
                if len(f) == 3 and {_tail(ends, x) for x in f} == target:
                    cands.append((tuple(sorted(x.edge for x in f)), _face_key(f), f))
            if not cands:
                return None
            face = min(cands)[2]
            step = {
                "case": "d3",
                "vertex": v,
                "params": {"face": [[x.edge, x.end] for x in _face_key(face)], "v_edges": v_edges},
            }
            _apply_step(rot, ends, step)
            return step

        yield rest_verts, dict(rest_edges), finish
        return

    # d == 4 or d == 5: helper chords from a labelling taken off a Hamiltonian ordering
    seen_helpers = set()
    for order in iter_dart_orderings(g, lv, "maximal"):
        hs = [vmap[g.head(x)] for x in order]
        for r in range(d):
            for refl in (False, True):
                lab = hs[r:] + hs[:r]
                if refl:
                    lab = [lab[0]] + lab[:0:-1]
                if d == 4:
                    pairs = [(lab[0], lab[2])]
                else:
                    if len(set(lab)) != 5:
                        continue
                    pairs = [(lab[0], lab[2]), (lab[0], lab[3])]
                if any(a == b or g.adjacent(vmap.index(a), vmap.index(b)) for a, b in pairs):
                    continue
                hkey = frozenset(frozenset(p) for p in pairs)
                if hkey in seen_helpers:
                    continue
                seen_helpers.add(hkey)
                helpers = []
                sub_edges = dict(rest_edges)
                for a, b in pairs:
                    h = search.next_helper
                    search.next_helper += 1
                    sub_edges[h] = (a, b)
                    helpers.append([h, a, b])
                want = Counter(heads)

                def finish(rot, ends, helpers=helpers, want=want, case=f"d{d}"):
                    probe = {w: list(r) for w, r in rot.items()}
                    for h, _, _ in helpers:
                        _delete_edge(probe, h)
                    face = _merged_face(probe, ends)
                    if face is None or Counter(_tail(ends, x) for x in face) != want:
                        return None
                    step = {"case": case, "vertex": v, "params": {"helpers": helpers, "v_edges": v_edges}}
                    _apply_step(rot, ends, step)
                    return step

                yield rest_verts, sub_edges, finish


def reconstruct_triangulation(g: Multigraph, budget: int = RECURSION_BUDGET):
    """Embed ``g`` as a triangulation of the sphere.

    Returns ``(scheme, trace)``.  Requires ``g`` connected, loopless, ``n >= 3``,
    ``m == 3n - 6`` and locally Hamiltonian.
    """
    if g.has_loops():
        raise HasLoops("reconstruction needs a loopless graph")
    if g.n < 3 or g.m != 3 * g.n - 6:
        raise EdgeCountMismatch(f"need n >= 3 and m = 3n-6; got n={g.n}, m={g.m}")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    if not is_lh(g):
        raise NotLocallyHamiltonian("graph is not locally Hamiltonian")
    search = _Search(budget)
    search.next_helper = g.m
    steps: list[dict] = []
    edges = {e: g.ends[e] for e in range(g.m)}
    rot = _reconstruct(frozenset(g.vertices()), edges, search, steps)
    trace = ReconstructionTrace(steps, attempts=search.calls, backtracks=search.backtracks)
    if rot is None:
        tag = "pendant-double-edge" if search.pendant_double_seen else "exhausted"
        log.error("reconstruction failed for %r; trace=%s", g, steps)
        raise ReconstructionFailed("no reduction sequence succeeded", tag=tag, trace=trace)
    if any(d.edge >= g.m for r in rot.values() for d in r):
        raise ReconstructionFailed("helper edge left in output", tag="helper-leak", trace=trace)
    scheme = EmbeddingScheme(g, [rot[v] for v in g.vertices()])
    if not is_sphere_triangulation(scheme):
        raise ReconstructionFailed("output is not a sphere triangulation", tag="invalid-output", trace=trace)
    return scheme, trace


# ---------------------------------------------------------------------------
# brute-force oracle

def _oracle_search(g: Multigraph):
    """Yield every all-positive rotation system of ``g`` whose faces are all triangles,
    up to global reflection."""
    n = g.n
    if n < 3 or g.m != 3 * n - 6 or g.has_loops() or not is_connected(g):
        return
    options = {v: list(iter_dart_orderings(g, v, "triangular")) for v in g.vertices()}
    if any(not o for o in options.values()):
        return
    start = max(g.vertices(), key=lambda v: (g.degree(v), -v))
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for w in sorted(g.neighbors(order[i])):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1

    def rev(r):
        return (r[0],) + tuple(reversed(r[1:]))

    options[start] = [r for r in options[start] if r <= rev(r)]
    succ: dict[Dart, Dart] = {}
    assigned: set[int] = set()
    head, tail = g.head, g.tail

    def face_ok(d1: Dart) -> bool:
        w = tail(d1)
        a = head(d1)
        if a not in assigned:
            return True
        d2 = succ[d1.partner]
        b = head(d2)
        if b == w:
            return False
        if b not in assigned:
            return True
        d3 = succ[d2.partner]
        if head(d3) != w:
            return False
        return succ[d3.partner] == d1

    def assign(k: int):
        if k == len(order):
            yield tuple(tuple(_rot_of(succ, g, v)) for v in g.vertices())
            return
        x = order[k]
        for r in options[x]:
            for j, d in enumerate(r):
                succ[d] = r[(j + 1) % len(r)]
            assigned.add(x)
            ok = all(face_ok(d) for d in r)
            if ok:
                for y in g.neighbors(x):
                    if y in assigned and not all(face_ok(d) for d in g.darts_at(y)):
                        ok = False
                        break
            if ok:
                yield from assign(k + 1)
            assigned.discard(x)
            for d in r:
                del succ[d]

    yield from assign(0)


def _rot_of(succ, g: Multigraph, v: int) -> list[Dart]:
    darts = g.darts_at(v)
    if not darts:
        return []
    out = [darts[0]]
    while len(out) < len(darts):
        out.append(succ[out[-1]])
    return out


def oracle_embed(g: Multigraph, cap: int = ORACLE_CAP) -> EmbeddingScheme | None:
    """Exhaustive search for a genus-0 scheme with all faces of length 3."""
    if g.n > cap:
        raise TooLarge(f"oracle_embed is capped at n <= {cap}, got {g.n}")
    if g.has_loops():
        raise HasLoops("oracle_embed handles loopless graphs")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    for rot in _oracle_search(g):
        s = EmbeddingScheme(g, rot)
        if is_sphere_triangulation(s):
            return s
    return None


def all_sphere_triangulations(g: Multigraph, cap: int = ORACLE_CAP) -> list[EmbeddingScheme]:
    """Every triangular genus-0 scheme of ``g`` up to global reflection."""
    if g.n > cap:
        raise TooLarge(f"capped at n <= {cap}")
    out = []
    for rot in _oracle_search(g):
        s = EmbeddingScheme(g, rot)
        if is_sphere_triangulation(s):
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# sides of a short cycle and the interior-vertex finder

@dataclass(frozen=True)
class SideDecomposition:
    cycle: tuple[int, ...]
    cycle_vertices: frozenset
    interior: frozenset
    exterior: frozenset
    interior_faces: tuple[FacialWalk, ...]
    exterior_faces: tuple[FacialWalk, ...]

    def side(self, name: str) -> frozenset:
        return {"interior": self.interior, "exterior": self.exterior}[name]


def _cycle_vertices(g: Multigraph, c: Sequence[int]) -> list[int]:
    c = list(c)
    if len(c) not in (2, 3) or len(set(c)) != len(c) or any(not 0 <= e < g.m for e in c):
        raise NotACycle("a cycle here is 2 parallel edges or a triangle of 3 edges")
    if any(g.is_loop(e) for e in c):
        raise NotACycle("cycle contains a loop")
    if len(c) == 2:
        if set(g.ends[c[0]]) != set(g.ends[c[1]]):
            raise NotACycle("the two edges are not parallel")
        return sorted(set(g.ends[c[0]]))
    count = Counter(x for e in c for x in g.ends[e])
    if len(count) != 3 or any(k != 2 for k in count.values()):
        raise NotACycle("the three edges do not form a triangle")
    return sorted(count)


def side_decomposition(s: EmbeddingScheme, c: Sequence[int]) -> SideDecomposition:
    g = s.graph
    cyc = _cycle_vertices(g, c)
    if euler_genus(s) != 0:
        raise NotGenusZero("side decomposition needs a genus-0 scheme")
    faces = trace_faces(s)
    by_edge: dict[int, list[int]] = {}
    for i, f in enumerate(faces):
        for d in f.darts:
            by_edge.setdefault(d.edge, []).append(i)
    cut = set(c)
    comp = [-1] * len(faces)
    ncomp = 0
    for i in range(len(faces)):
        if comp[i] != -1:
            continue
        comp[i] = ncomp
        stack = [i]
        while stack:
            x = stack.pop()
            for d in faces[x].darts:
                if d.edge in cut:
                    continue
                for y in by_edge[d.edge]:
                    if comp[y] == -1:
                        comp[y] = ncomp
                        stack.append(y)
        ncomp += 1
    if ncomp != 2:
        raise NotACycle(f"cycle splits the faces into {ncomp} regions, expected 2")
    cset = frozenset(cyc)
    outer = comp[0]

    def side_of(k):
        vs = set()
        for i, f in enumerate(faces):
            if comp[i] == k:
                vs.update(f.vertices(g))
        return frozenset(vs - cset), tuple(f for i, f in enumerate(faces) if comp[i] == k)

    ext, ext_faces = side_of(outer)
    inn, inn_faces = side_of(1 - outer)
    if ext & inn or (ext | inn | cset) != frozenset(g.vertices()):
        raise NotACycle("sides do not partition the remaining vertices")
    return SideDecomposition(tuple(c), cset, inn, ext, inn_faces, ext_faces)


def nonfacial_triangle_vertices(s: EmbeddingScheme) -> set[int]:
    """Vertices lying on some 3-cycle (as an edge set) that is not a face boundary."""
    g = s.graph
    facial = {frozenset(d.edge for d in f.darts) for f in trace_faces(s) if len(f) == 3}
    out = set()
    for a in g.vertices():
        darts = g.darts_at(a)
        for i in range(len(darts)):
            for j in range(i + 1, len(darts)):
                y, z = g.head(darts[i]), g.head(darts[j])
                if y == z or a in (y, z):
                    continue
                for e in g.edges_between(y, z):
                    if frozenset((darts[i].edge, darts[j].edge, e)) not in facial:
                        out.add(a)
    return out


def lemma1_candidates(s: EmbeddingScheme, c: Sequence[int], side: str = "interior") -> list[int]:
    """Side vertices that are simple, of degree <= 5, with <= 2 non-simple
    neighbours and on no non-facial 3-cycle."""
    g = s.graph
    if side not in ("interior", "exterior"):
        raise ValueError("side must be 'interior' or 'exterior'")
    if g.has_loops() or not is_connected(g) or not is_sphere_triangulation(s):
        raise PreconditionViolated("scheme is not a triangulation of the sphere")
    _cycle_vertices(g, c)
    if len(c) == 3:
        facial = {frozenset(d.edge for d in f.darts) for f in trace_faces(s)}
        if frozenset(c) in facial:
            raise PreconditionViolated("the 3-cycle is facial")
    dec = side_decomposition(s, c)
    verts = sorted(dec.side(side))
    low = [v for v in verts if g.degree(v) < 4]
    if low:
        raise PreconditionViolated(
            f"side vertex {g.labels[low[0]]!r} has degree {g.degree(low[0])} < 4"
        )
    bad = nonfacial_triangle_vertices(s)
    out = []
    for v in verts:
        if not is_simple_vertex(g, v) or g.degree(v) > 5 or v in bad:
            continue
        if sum(1 for w in g.neighbors(v) if not is_simple_vertex(g, w)) > 2:
            continue
        out.append(v)
    return out
