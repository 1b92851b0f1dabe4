import itertools

import networkx as nx
import pytest
from hypothesis import given

from conftest import multigraphs
from lhgraph.embedding import is_edge_maximal
from lhgraph.enumeration import EnumerationRange, enumerate_graphs, enumerate_schemes
from lhgraph.errors import HasLoops, NonSimpleVertex, TooLarge
from lhgraph.hamiltonian import (
    hamiltonian_ordering,
    is_lh,
    is_locally_hamiltonian,
    neighborhood_hamiltonian_cycles,
    validate_ordering,
)
from lhgraph.library import complete_graph, octahedron, path_graph, projective_example, star_graph, wheel_graph
from lhgraph.multigraph import Dart, Multigraph, build_graph, is_simple_vertex


def brute_has_ordering(g, v):
    darts = g.darts_at(v)
    if len(darts) <= 1:
        return True
    first, *rest = darts
    return any(validate_ordering(g, v, (first,) + p) for p in itertools.permutations(rest))


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.ends)
    return h


def test_examples():
    assert hamiltonian_ordering(complete_graph(3), 0) is not None
    assert hamiltonian_ordering(path_graph(3), "1") is None
    g = projective_example()
    u = g.index("u")
    order = [Dart(e, 0) for e in (0, 1, 2, 3, 4)]
    assert [g.labels[g.head(d)] for d in order] == ["v", "a", "b", "v", "c"]
    assert validate_ordering(g, u, order)
    assert hamiltonian_ordering(g, "u") is not None


def test_lh_examples():
    assert is_locally_hamiltonian(octahedron())[0]
    assert is_locally_hamiltonian(complete_graph(5))[0]
    ok, bad = is_locally_hamiltonian(star_graph(3))
    assert not ok
    assert bad == 0


def test_degree_cap_and_loops():
    with pytest.raises(TooLarge):
        hamiltonian_ordering(star_graph(13), "c")
    looped = build_graph("ab", [("a", "b"), ("a", "a")], loops_allowed=True)
    with pytest.raises(HasLoops):
        is_locally_hamiltonian(looped)


def test_low_degree_is_vacuous():
    g = path_graph(2)
    assert is_locally_hamiltonian(g)[0]
    assert is_lh(build_graph("a", []))


def test_neighborhood_cycle_examples():
    k4 = complete_graph(4)
    oct_ = octahedron()
    for v in range(4):
        assert len(neighborhood_hamiltonian_cycles(k4, v)) == 1
    for v in oct_.vertices():
        assert len(neighborhood_hamiltonian_cycles(oct_, v)) == 1
    assert len(neighborhood_hamiltonian_cycles(wheel_graph(5), "h")) == 1
    assert len(neighborhood_hamiltonian_cycles(complete_graph(5), 0)) == 3
    with pytest.raises(NonSimpleVertex):
        neighborhood_hamiltonian_cycles(projective_example(), "u")


@given(multigraphs(max_n=7, max_mult=2))
def test_certificate_soundness(g):
    ok, info = is_locally_hamiltonian(g)
    assert ok == is_lh(g)
    if ok:
        assert len(info.orderings) == g.n
        for o in info.orderings:
            assert validate_ordering(g, o.vertex, o.order)
    else:
        assert not brute_has_ordering(g, info)
    for v in g.vertices():
        if g.degree(v) <= 7:
            assert (hamiltonian_ordering(g, v) is not None) == brute_has_ordering(g, v)


def _lh_population():
    yield from enumerate_graphs(EnumerationRange(max_n=6), predicate=is_lh)
    yield from enumerate_graphs(EnumerationRange(max_n=4, max_multiplicity=2), predicate=is_lh)


def test_multiplication_stability():
    seen = 0
    for g in _lh_population():
        for e in range(g.m):
            h = Multigraph(g.labels, list(g.ends) + [g.ends[e]])
            assert is_lh(h)
            seen += 1
    assert seen > 0


def test_maximal_rotations_are_hamiltonian_orderings():
    for g in (complete_graph(4), octahedron(), projective_example(), wheel_graph(5)):
        for s in enumerate_schemes(g, edge_max_only=True):
            assert is_edge_maximal(s)[0]
            for v in g.vertices():
                assert validate_ordering(g, v, s.rotation[v])


def test_planar_uniqueness_exhaustive_small():
    for g in enumerate_graphs(EnumerationRange(max_n=6)):
        if not nx.check_planarity(to_nx(g))[0]:
            continue
        for v in g.vertices():
            assert len(neighborhood_hamiltonian_cycles(g, v)) <= 1


@given(multigraphs(max_n=7, min_n=7))
def test_planar_uniqueness_sampled_n7(g):
    if not nx.check_planarity(to_nx(g))[0]:
        return
    for v in g.vertices():
        assert is_simple_vertex(g, v)
        assert len(neighborhood_hamiltonian_cycles(g, v)) <= 1
