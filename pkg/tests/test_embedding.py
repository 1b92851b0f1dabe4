import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import multigraphs
from lhgraph.embedding import (
    EmbeddingScheme,
    Orientation,
    euler_genus,
    face_sets_equal,
    gauge_flip,
    is_edge_maximal,
    is_sphere_triangulation,
    normalize_gauge,
    rotation_orientation_match,
    spanning_tree,
    trace_faces,
)
from lhgraph.enumeration import enumerate_schemes
from lhgraph.errors import InvalidScheme
from lhgraph.fixtures import find_k4_projective, find_projective_counterexample, projective_example_sphere
from lhgraph.hamiltonian import is_lh
from lhgraph.library import complete_graph, cycle_graph, digon_triangulation, k3_sphere, k4_sphere, octahedron
from lhgraph.multigraph import Multigraph, build_graph, is_connected
from lhgraph.triangulation import oracle_embed


def faces_by_walking(s):
    """Independent face count: walk (dart, local orientation) states directly."""
    g = s.graph
    pos = {}
    for v, r in enumerate(s.rotation):
        for i, d in enumerate(r):
            pos[d] = (v, i)
    seen = set()
    orbits = 0
    for d in pos:
        for flag in (1, -1):
            if (d, flag) in seen:
                continue
            orbits += 1
            cur = (d, flag)
            while cur not in seen:
                seen.add(cur)
                dart, f = cur
                f *= s.signature[dart.edge]
                v, i = pos[dart.partner]
                r = s.rotation[v]
                cur = (r[(i + f) % len(r)], f)
    return orbits // 2


@st.composite
def schemes(draw, max_n=6, max_mult=2, loops=False, signed=True):
    g = draw(multigraphs(max_n=max_n, max_mult=max_mult, loops=loops, connected=True))
    rot = [list(draw(st.permutations(g.darts_at(v)))) for v in g.vertices()]
    sig = draw(st.lists(st.sampled_from([1, -1]), min_size=g.m, max_size=g.m)) if signed else None
    return EmbeddingScheme(g, rot, sig)


def test_k3_two_triangles():
    g = complete_graph(3)
    s = EmbeddingScheme(g, [g.darts_at(v) for v in g.vertices()])
    faces = trace_faces(s)
    assert [len(f) for f in faces] == [3, 3]
    assert euler_genus(s) == 0


def test_k2_single_face():
    g = complete_graph(2)
    s = EmbeddingScheme(g, [g.darts_at(v) for v in g.vertices()])
    assert [len(f) for f in trace_faces(s)] == [2]


def test_k4_three_quadrilaterals():
    s = find_k4_projective()
    assert sorted(len(f) for f in trace_faces(s)) == [4, 4, 4]
    assert euler_genus(s) == 1
    assert not is_sphere_triangulation(s)
    assert not face_sets_equal(s, k4_sphere())


def test_sphere_triangulations():
    s = k4_sphere()
    assert is_sphere_triangulation(s)
    assert (s.graph.n, s.graph.m, s.face_count()) == (4, 6, 4)
    assert euler_genus(k3_sphere()) == 0
    d = oracle_embed(digon_triangulation())
    assert d is not None and is_sphere_triangulation(d)


def test_k5_never_planar():
    g = complete_graph(5)
    per_vertex = []
    for v in g.vertices():
        first, *rest = g.darts_at(v)
        per_vertex.append([(first,) + p for p in itertools.permutations(rest)])
    most = max(faces_by_walking(EmbeddingScheme(g, list(rot), check=False))
               for rot in itertools.product(*per_vertex))
    assert 2 - g.n + g.m - most == 2
    r = random.Random(3)
    for _ in range(500):
        rot = [r.choice(opts) for opts in per_vertex]
        sig = [r.choice((1, -1)) for _ in range(g.m)]
        assert euler_genus(EmbeddingScheme(g, rot, sig)) >= 1


def test_maximality_examples():
    assert is_edge_maximal(k4_sphere()) == (True, None)
    assert is_edge_maximal(find_k4_projective())[0]
    c5 = cycle_graph(5)
    ok, w = is_edge_maximal(EmbeddingScheme(c5, [c5.darts_at(v) for v in c5.vertices()]))
    assert not ok and not c5.adjacent(w.u, w.v)
    assert w.u in w.face.vertices(c5) and w.v in w.face.vertices(c5)
    k4e = build_graph("wxyz", [("w", "x"), ("w", "y"), ("w", "z"), ("x", "z"), ("y", "z")])
    s = oracle_embed(build_graph("wxyz", [("w", "x"), ("w", "y"), ("w", "z"), ("x", "z"), ("y", "z"), ("x", "y")]))
    rot = [[d for d in r if d.edge != 5] for r in s.rotation]
    ok, w = is_edge_maximal(EmbeddingScheme(k4e, rot))
    assert not ok
    assert {k4e.labels[w.u], k4e.labels[w.v]} == {"x", "y"}
    assert len(w.face) == 4


def test_orientation_examples():
    s = k4_sphere()
    assert all(rotation_orientation_match(s, s, v) == Orientation.SAME for v in s.graph.vertices())
    m = s.mirror()
    assert all(rotation_orientation_match(m, s, v) == Orientation.REVERSED for v in s.graph.vertices())
    proj = find_projective_counterexample()
    sphere = projective_example_sphere()
    u = proj.graph.index("u")
    assert [d.edge for d in proj.rotation[u]] == [0, 2, 1, 3, 4]
    assert [d.edge for d in sphere.rotation[u]] == [0, 1, 2, 3, 4]
    assert rotation_orientation_match(proj, sphere, "u") == Orientation.MISMATCH


def test_face_sets_examples():
    s = k4_sphere()
    assert face_sets_equal(s, s.mirror())
    g = octahedron()
    sphere = oracle_embed(g)
    count = 0
    for t in enumerate_schemes(g, edge_max_only=True):
        count += 1
        assert face_sets_equal(t, sphere)
    assert count == 1


def test_invalid_scheme():
    g = complete_graph(3)
    with pytest.raises(InvalidScheme):
        EmbeddingScheme(g, [g.darts_at(0), g.darts_at(0), g.darts_at(2)])
    with pytest.raises(InvalidScheme):
        EmbeddingScheme(g, [g.darts_at(v) for v in g.vertices()], [1, 0, 1])


@given(schemes(loops=True))
def test_double_counting_and_oracle_tracer(s):
    faces = trace_faces(s)
    assert sum(len(f) for f in faces) == 2 * s.graph.m
    assert len(faces) == faces_by_walking(s) == s.face_count()
    assert euler_genus(s) >= 0


@given(schemes(), st.data())
def test_gauge_invariance(s, data):
    v = data.draw(st.integers(0, s.graph.n - 1))
    t = gauge_flip(s, v)
    assert t.face_count() == s.face_count()
    assert euler_genus(t) == euler_genus(s)
    assert face_sets_equal(s, t)
    n = normalize_gauge(s)
    assert all(n.signature[e] == 1 for e in spanning_tree(s.graph))
    assert face_sets_equal(s, n)
    assert n.is_orientable() == s.is_orientable()


@given(schemes(max_n=6))
def test_maximal_implies_locally_hamiltonian(s):
    ok, _ = is_edge_maximal(s)
    if ok:
        g = s.graph
        assert is_lh(g)
        if g.n >= 3:
            assert all(len(g.neighbors(v)) >= 2 for v in g.vertices())


@given(schemes(signed=False))
def test_all_positive_is_orientable(s):
    assert s.is_orientable()
    # orientable Euler genus is even
    assert euler_genus(s) % 2 == 0


def test_enumerated_maximal_schemes_certify_lh():
    for g in (complete_graph(4), octahedron(), digon_triangulation()):
        for s in enumerate_schemes(g, edge_max_only=True):
            assert is_edge_maximal(s)[0]
            assert is_lh(g)
