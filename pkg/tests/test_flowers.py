import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhgraph.embedding import euler_genus, is_edge_maximal, trace_faces
from lhgraph.errors import BadAttachmentVertex, ValidationError
from lhgraph.flowers import (
    Attachment,
    FlowerDecomposition,
    build_flower,
    flower_scheme,
    is_flower,
    random_decomposition,
)
from lhgraph.multigraph import build_graph, canonical_code


def test_edge_counts():
    g = build_flower(FlowerDecomposition("K2"))
    assert (g.n, g.m) == (2, 1)
    for at in ("0", "1"):
        g = build_flower(FlowerDecomposition("K2", (Attachment("K2o", at),)))
        assert (g.n, g.m) == (3, 3)
    g = build_flower(FlowerDecomposition("K3", (Attachment("K3o", "2"),)))
    assert (g.n, g.m) == (5, 7)


def test_recognize_rejects():
    assert is_flower(build_graph("abc", [("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")], loops_allowed=True)) is None
    assert is_flower(build_graph("ab", [("a", "b"), ("a", "a"), ("b", "b")], loops_allowed=True)) is None


def test_bad_decompositions():
    with pytest.raises(BadAttachmentVertex):
        build_flower(FlowerDecomposition("K2", (Attachment("K2o", "7"),)))
    with pytest.raises(ValidationError):
        build_flower(FlowerDecomposition("K4"))
    with pytest.raises(ValidationError):
        build_flower(FlowerDecomposition("K2", (Attachment("K5o", "0"),)))


def test_scheme_examples():
    s = flower_scheme(FlowerDecomposition("K2"))
    assert [len(f) for f in trace_faces(s)] == [2]
    assert euler_genus(s) == 0 and is_edge_maximal(s)[0]
    d = FlowerDecomposition("K2", (Attachment("K2o", "0"),))
    s = flower_scheme(d)
    assert euler_genus(s) == 0 and is_edge_maximal(s)[0]
    g = s.graph
    pendant, far = g.index("2"), g.index("1")
    assert not any(pendant in f.vertices(g) and far in f.vertices(g) for f in trace_faces(s))
    d = FlowerDecomposition("K3", tuple(Attachment("K2o", x) for x in "012"))
    s = flower_scheme(d)
    assert euler_genus(s) == 0 and is_edge_maximal(s)[0]
    assert max(len(f) for f in trace_faces(s)) >= 6


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1))
def test_build_recognize_roundtrip(seed):
    d = random_decomposition(random.Random(seed), max_n=30)
    g = build_flower(d)
    assert g.m == 2 * g.n - 3
    found = is_flower(g)
    assert found is not None
    again = build_flower(found)
    assert again.label_multiset() == g.label_multiset()
    assert again.n == g.n and sorted(again.labels) == sorted(g.labels)
    if g.n <= 10:
        assert canonical_code(again) == canonical_code(g)
    s = flower_scheme(d)
    assert euler_genus(s) == 0
    assert is_edge_maximal(s)[0]


def test_decomposition_json_roundtrip():
    d = FlowerDecomposition("K3", (Attachment("K3o", "0", ("p", "q")), Attachment("K2o", "p")), ("a", "0", "b"))
    assert FlowerDecomposition.from_json(d.to_json()) == d
