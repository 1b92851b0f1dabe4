"""Named graphs, bundled schemes and random triangulation generators."""
from __future__ import annotations

import itertools
import random

from .embedding import EmbeddingScheme
from .multigraph import Dart, Multigraph, build_graph


def complete_graph(k: int) -> Multigraph:
    labels = [str(i) for i in range(k)]
    return build_graph(labels, itertools.combinations(labels, 2))


def cycle_graph(k: int) -> Multigraph:
    labels = [str(i) for i in range(k)]
    return build_graph(labels, [(labels[i], labels[(i + 1) % k]) for i in range(k)])


def path_graph(k: int) -> Multigraph:
    labels = [str(i) for i in range(k)]
    return build_graph(labels, [(labels[i], labels[i + 1]) for i in range(k - 1)])


def star_graph(k: int) -> Multigraph:
    labels = ["c"] + [str(i) for i in range(k)]
    return build_graph(labels, [("c", str(i)) for i in range(k)])


def wheel_graph(k: int) -> Multigraph:
    """Hub ``h`` joined to a ``k``-cycle."""
    labels = ["h"] + [str(i) for i in range(k)]
    rim = [(str(i), str((i + 1) % k)) for i in range(k)]
    return build_graph(labels, rim + [("h", str(i)) for i in range(k)])


def bipyramid(k: int) -> Multigraph:
    """Two apexes ``n``, ``s`` over a ``k``-cycle; a triangulation for ``k >= 3``."""
    labels = ["n", "s"] + [str(i) for i in range(k)]
    rim = [(str(i), str((i + 1) % k)) for i in range(k)]
    return build_graph(labels, rim + [(p, str(i)) for p in ("n", "s") for i in range(k)])


def octahedron() -> Multigraph:
    """K_{2,2,2} with antipodal pairs (0,1), (2,3), (4,5)."""
    labels = [str(i) for i in range(6)]
    edges = [(a, b) for a, b in itertools.combinations(labels, 2) if int(a) // 2 != int(b) // 2]
    return build_graph(labels, edges)


def digon_triangulation() -> Multigraph:
    """The 4-vertex triangulation with a 2-cycle ``uv`` and simple vertices ``x``, ``y``."""
    return build_graph("uvxy", [("u", "v"), ("u", "v"), ("x", "u"), ("x", "v"), ("y", "u"), ("y", "v")])


def projective_example() -> Multigraph:
    """Five-vertex triangulation with a double edge ``uv`` and edge ids
    0:uv 1:ua 2:ub 3:uv 4:uc 5:va 6:vb 7:vc 8:ab."""
    edges = [("u", "v"), ("u", "a"), ("u", "b"), ("u", "v"), ("u", "c"),
             ("v", "a"), ("v", "b"), ("v", "c"), ("a", "b")]
    return build_graph(["a", "b", "c", "u", "v"], edges)


def double_octahedron() -> Multigraph:
    """Two octahedra glued along a face ``abc``; interior ``x, y, z`` and exterior ``p, q, r``."""
    edges = [("a", "b"), ("b", "c"), ("c", "a")]
    # each octahedron: abc plus the opposite triangle, with antipodes a-x, b-y, c-z
    for x, y, z in (("x", "y", "z"), ("p", "q", "r")):
        edges += [(x, y), (y, z), (z, x)]
        edges += [("a", y), ("a", z), ("b", x), ("b", z), ("c", x), ("c", y)]
    return build_graph(["a", "b", "c", "x", "y", "z", "p", "q", "r"], edges)


def triangle_edges(g: Multigraph, names) -> list[int]:
    """Edge ids of the triangle on three labelled vertices (first edge of each pair)."""
    a, b, c = (g.index(x) for x in names)
    return [g.edges_between(a, b)[0], g.edges_between(b, c)[0], g.edges_between(c, a)[0]]


def rotation_by_neighbors(g: Multigraph, cycles: dict) -> EmbeddingScheme:
    """Scheme from per-vertex neighbour-label cycles (simple graphs only)."""
    rot = {}
    for lab, nbrs in cycles.items():
        v = g.index(lab)
        darts = []
        for w in nbrs:
            w = g.index(w)
            (e,) = g.edges_between(v, w)
            darts.append(Dart(e, 0 if g.ends[e][0] == v else 1))
        rot[v] = darts
    return EmbeddingScheme(g, rot)


def k4_sphere() -> EmbeddingScheme:
    g = complete_graph(4)
    return rotation_by_neighbors(g, {"0": "123", "1": "032", "2": "013", "3": "021"})


def c5_sphere() -> EmbeddingScheme:
    g = cycle_graph(5)
    return EmbeddingScheme(g, [g.darts_at(v) for v in g.vertices()])


def k3_sphere() -> EmbeddingScheme:
    g = complete_graph(3)
    return EmbeddingScheme(g, [g.darts_at(v) for v in g.vertices()])


# ---------------------------------------------------------------------------
# random triangulations (combinatorial maps, all-positive)

def _relabel(g: Multigraph, rot: dict) -> EmbeddingScheme:
    return EmbeddingScheme(g, [rot[v] for v in g.vertices()])


def random_triangulation(n: int, rng: random.Random, flips: int = 0, min_degree: int = 3) -> EmbeddingScheme:
    """Random simple sphere triangulation: stacked insertions followed by random edge flips.

    Rejection-samples until the minimum degree reaches ``min_degree``.
    """
    from .triangulation import _delete_edge, _faces, _insert_vertex

    if n < 4:
        raise ValueError("need n >= 4")
    for _ in range(10_000):
        ends = {0: (0, 1), 1: (1, 2), 2: (2, 0)}
        rot = {0: [Dart(0, 0), Dart(2, 1)], 1: [Dart(1, 0), Dart(0, 1)], 2: [Dart(2, 0), Dart(1, 1)]}
        nxt = 3
        for v in range(3, n):
            face = rng.choice(_faces(rot, ends))
            vs = [ends[d.edge][d.end] for d in face]
            new = []
            for w in vs:
                ends[nxt] = (w, v)
                new.append(nxt)
                nxt += 1
            _insert_vertex(rot, ends, face, v, new)
        for _ in range(flips or 4 * n):
            _random_flip(rot, ends, rng, _faces, _delete_edge, _insert_vertex)
        deg = {v: len(r) for v, r in rot.items()}
        if min(deg.values()) >= min_degree:
            # renumber edges densely
            order = sorted(ends)
            new_id = {e: i for i, e in enumerate(order)}
            g = Multigraph([str(v) for v in range(n)], [ends[e] for e in order])
            rot2 = {v: [Dart(new_id[d.edge], d.end) for d in r] for v, r in rot.items()}
            return _relabel(g, rot2)
    raise RuntimeError("could not reach requested minimum degree")


def _random_flip(rot, ends, rng, _faces, _delete_edge, _insert_vertex):
    e = rng.choice(sorted(ends))
    a, b = ends[e]
    faces = [f for f in _faces(rot, ends) if any(d.edge == e for d in f)]
    if len(faces) != 2:
        return
    opp = []
    for f in faces:
        vs = [ends[d.edge][d.end] for d in f]
        rest = [x for x in vs if x not in (a, b)]
        if len(rest) != 1:
            return
        opp.append(rest[0])
    c, d = opp
    if c == d or any(set(p) == {c, d} for p in ends.values()):
        return
    if len(rot[a]) <= 3 or len(rot[b]) <= 3:
        return
    _delete_edge(rot, e)
    del ends[e]
    (quad,) = [f for f in _faces(rot, ends) if len(f) == 4]
    # split the quadrilateral by a chord c-d: insert the chord beside the corners
    ids = [x for x in quad]
    vs = [ends[x.edge][x.end] for x in ids]
    i, j = vs.index(c), vs.index(d)
    ends[e] = (c, d)
    _insert_chord(rot, ends, ids[i], ids[j], e)


def _insert_chord(rot, ends, dc: Dart, dd: Dart, e: int):
    """Insert edge ``e`` = (c, d) across a face, splitting it at the corners where
    ``dc`` leaves ``c`` and ``dd`` leaves ``d``."""
    c, d = ends[e]
    r = rot[c]
    r.insert(r.index(dc), Dart(e, 0))
    r = rot[d]
    r.insert(r.index(dd), Dart(e, 1))


def glue_along_triangle(t1: EmbeddingScheme, t2: EmbeddingScheme, rng: random.Random) -> tuple[Multigraph, list[int], set]:
    """Identify a random facial triangle of ``t1`` with one of ``t2`` (graph level).

    Returns the glued graph, the edge ids of the shared triangle and the
    labels of ``t2``'s side.
    """
    from .triangulation import _faces

    def tri(s):
        g = s.graph
        rot = {v: list(s.rotation[v]) for v in g.vertices()}
        ends = dict(enumerate(g.ends))
        f = rng.choice(_faces(rot, ends))
        return [ends[d.edge][d.end] for d in f]

    g1, g2 = t1.graph, t2.graph
    f1, f2 = tri(t1), tri(t2)
    shift = rng.randrange(3)
    f2 = f2[shift:] + f2[:shift]
    ident = {f2[i]: f1[i] for i in range(3)}
    name1 = {v: f"a{v}" for v in g1.vertices()}
    name2 = {v: (name1[ident[v]] if v in ident else f"b{v}") for v in g2.vertices()}
    labels = [name1[v] for v in g1.vertices()] + [name2[v] for v in g2.vertices() if v not in ident]
    edges = [(name1[a], name1[b]) for a, b in g1.ends]
    shared = {frozenset((name1[f1[i]], name1[f1[(i + 1) % 3]])) for i in range(3)}
    for a, b in g2.ends:
        pair = frozenset((name2[a], name2[b]))
        if pair in shared:
            continue
        edges.append((name2[a], name2[b]))
    g = build_graph(labels, edges)
    cyc = [g.edges_between(g.index(name1[f1[i]]), g.index(name1[f1[(i + 1) % 3]]))[0] for i in range(3)]
    side = {name2[v] for v in g2.vertices() if v not in ident}
    return g, cyc, side


def glue_along_edge(t1: EmbeddingScheme, t2: EmbeddingScheme, rng: random.Random) -> tuple[Multigraph, list[int], set]:
    """Identify the ends of a random edge of ``t1`` with those of one of ``t2``,
    keeping both edges; the two form a separating 2-cycle."""
    g1, g2 = t1.graph, t2.graph
    e1 = rng.randrange(g1.m)
    e2 = rng.randrange(g2.m)
    x1, y1 = g1.ends[e1]
    x2, y2 = g2.ends[e2]
    if rng.random() < 0.5:
        x2, y2 = y2, x2
    ident = {x2: x1, y2: y1}
    name1 = {v: f"a{v}" for v in g1.vertices()}
    name2 = {v: (name1[ident[v]] if v in ident else f"b{v}") for v in g2.vertices()}
    labels = [name1[v] for v in g1.vertices()] + [name2[v] for v in g2.vertices() if v not in ident]
    edges = [(name1[a], name1[b]) for a, b in g1.ends] + [(name2[a], name2[b]) for a, b in g2.ends]
    g = build_graph(labels, edges)
    cyc = [e1, g1.m + e2]
    side = {name2[v] for v in g2.vertices() if v not in ident}
    return g, cyc, side
