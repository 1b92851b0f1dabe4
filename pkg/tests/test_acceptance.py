"""Acceptance criteria 1-10, one test each.

Each test prints a ``PASS``/``FAIL`` line; the lines are repeated in the
pytest terminal summary.  Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import os
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from lhgraph.embedding import (
    Orientation,
    euler_genus,
    face_sets_equal,
    is_edge_maximal,
    is_sphere_triangulation,
    rotation_orientation_match,
    trace_faces,
)
from lhgraph.enumeration import (
    LOOP_DEFAULT,
    MULTI_DEFAULT,
    SIMPLE_DEFAULT,
    EnumerationRange,
    contains_k4,
    enumerate_graphs,
    enumerate_lh_triangulation_candidates,
    enumerate_schemes,
    verify_lemma1,
    verify_lh_bound,
    verify_loop_bound,
    verify_maximal_embeddings,
)
from lhgraph.fixtures import write_fixtures
from lhgraph.flowers import build_flower, flower_scheme, is_flower, random_decomposition
from lhgraph.hamiltonian import is_lh, neighborhood_hamiltonian_cycles
from lhgraph.io import parse_document
from lhgraph.library import complete_graph, digon_triangulation, octahedron
from lhgraph.multigraph import canonical_code
from lhgraph.triangulation import oracle_embed, reconstruct_triangulation

_REPORTS = {}


def record(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k:>2}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _timed(key, fn):
    if key not in _REPORTS:
        t0 = time.perf_counter()
        rep = fn()
        _REPORTS[key] = (rep, time.perf_counter() - t0)
    return _REPORTS[key]


def lh_simple():
    return _timed("lh-simple", lambda: verify_lh_bound(SIMPLE_DEFAULT))


def lh_multi():
    return _timed("lh-multi", lambda: verify_lh_bound(MULTI_DEFAULT))


def maximal_simple():
    return _timed("maximal-simple", lambda: verify_maximal_embeddings(SIMPLE_DEFAULT))


def _equality_graphs(r):
    return [g for g in enumerate_graphs(r, predicate=is_lh) if g.n >= 3 and g.m == 3 * g.n - 6]


def _reconstructs(g):
    s, _ = reconstruct_triangulation(g)
    o = oracle_embed(g)
    return (
        euler_genus(s) == 0
        and all(len(f) == 3 for f in trace_faces(s))
        and s.face_count() == 2 * g.n - 4
        and o is not None
        and is_sphere_triangulation(o)
    )


def test_criterion_01_lh_bound_simple():
    rep, secs = lh_simple()
    ok = rep.ok and rep.range["max_n"] == 6 and secs < 60
    record(1, ok, f"{rep.population} LH classes with n<=6, {len(rep.violations)} violations, {secs:.1f}s (<60s)")


def test_criterion_02_lh_equality_simple():
    rep, _ = lh_simple()
    graphs = _equality_graphs(SIMPLE_DEFAULT)
    codes = sorted(canonical_code(g).hex() for g in graphs)
    by_n = {n: [g for g in graphs if g.n == n] for n in range(3, 7)}
    ok = (
        codes == sorted(rep.equality_cases)
        and all(_reconstructs(g) for g in graphs)
        and [canonical_code(g) for g in by_n[4]] == [canonical_code(complete_graph(4))]
        and len(by_n[5]) == 1
    )
    counts = {n: len(v) for n, v in by_n.items()}
    record(2, ok, f"equality classes per n {counts}; all reconstructed to 2n-4 triangles and oracle-confirmed")


def test_criterion_03_lh_multigraphs():
    rep, secs = lh_multi()
    graphs = _equality_graphs(MULTI_DEFAULT)
    digon = canonical_code(digon_triangulation()).hex()
    ok = (
        rep.ok
        and secs < 300
        and digon in rep.equality_cases
        and sorted(canonical_code(g).hex() for g in graphs) == sorted(rep.equality_cases)
        and all(_reconstructs(g) for g in graphs)
    )
    record(3, ok, f"{rep.population} LH multigraph classes, {len(graphs)} equality cases incl. the 2-cycle "
                  f"triangulation, {len(rep.violations)} violations, {secs:.1f}s (<300s)")


def _orientation_ok(g):
    sphere, _ = reconstruct_triangulation(g)
    count = 0
    for s in enumerate_schemes(g, edge_max_only=True):
        count += 1
        for v in g.vertices():
            if rotation_orientation_match(s, sphere, v) == Orientation.MISMATCH:
                return False, count
    return count > 0, count


def test_criterion_04_orientation():
    rep, _ = maximal_simple()
    t0 = time.perf_counter()
    oct_ok, oct_count = _orientation_ok(octahedron())
    oct_secs = time.perf_counter() - t0
    small = [g for g in _equality_graphs(EnumerationRange(max_n=5)) if g.is_simple()]
    small_ok = all(_orientation_ok(g)[0] for g in small)
    orient_viol = [v for v in rep.violations if v["kind"] == "orientation"]
    ok = oct_ok and small_ok and oct_secs < 300 and rep.ok and not orient_viol
    record(4, ok, f"octahedron: {oct_count} edge-maximal schemes all same/reversed ({oct_secs:.1f}s); "
                  f"{len(small)} simple equality classes n<=5 agree; harness violations {len(rep.violations)}")


def test_criterion_05_face_equality():
    rep, _ = maximal_simple()
    tested = []
    ok = True
    for g in _equality_graphs(EnumerationRange(max_n=6, min_n=4)):
        if not g.is_simple() or contains_k4(g):
            continue
        sphere, _ = reconstruct_triangulation(g)
        tested.append(g)
        for s in enumerate_schemes(g, edge_max_only=True):
            ok &= face_sets_equal(s, sphere)
    octa = canonical_code(octahedron())
    ok = ok and any(canonical_code(g) == octa for g in tested) and rep.ok
    record(5, ok, f"{len(tested)} K4-free simple equality classes (octahedron included); face sets all equal")


def test_criterion_06_counterexamples(tmp_path):
    write_fixtures(str(tmp_path))
    import json

    g, s = parse_document((tmp_path / "projective_example_projective.json").read_text())
    _, sphere = parse_document((tmp_path / "projective_example_sphere.json").read_text())
    rep_a = json.loads((tmp_path / "projective_example_projective.report.json").read_text())
    a_ok = (
        is_edge_maximal(s)[0]
        and euler_genus(s) == 1
        and rotation_orientation_match(s, sphere, "u") == Orientation.MISMATCH
        and rep_a["orientation_vs_reference_sphere"]["u"] == "mismatch"
        and rep_a["mismatch_against_every_sphere_scheme"]
    )
    k4, proj = parse_document((tmp_path / "k4_projective.json").read_text())
    rep_b = json.loads((tmp_path / "k4_projective.report.json").read_text())
    faces = sorted(len(f) for f in trace_faces(proj))
    b_ok = is_edge_maximal(proj)[0] and faces == [4, 4, 4] and euler_genus(proj) == 1 and rep_b["euler_genus"] == 1
    record(6, a_ok and b_ok, f"(a) 5-vertex multigraph genus-1 maximal scheme, u rotation mismatches: {a_ok}; "
                             f"(b) K4 with faces {faces}, genus 1: {b_ok}; fixtures and reports written")


def test_criterion_07_lemma1():
    rep = verify_lemma1(count=100, seed=0)
    ok = rep.ok and rep.population >= 102
    low = min(int(k) for k in rep.info["candidate_counts"])
    record(7, ok, f"{rep.population} cases (double octahedron both sides + 100 random gluings, n<=12), "
                  f"min candidates {low}, {len(rep.violations)} failures")


def test_criterion_08_flowers():
    t0 = time.perf_counter()
    r = random.Random(2024)
    bad = 0
    for _ in range(500):
        d = random_decomposition(r, max_n=30)
        g = build_flower(d)
        back = is_flower(g)
        s = flower_scheme(d)
        if (
            g.m != 2 * g.n - 3
            or back is None
            or build_flower(back).label_multiset() != g.label_multiset()
            or euler_genus(s) != 0
            or not is_edge_maximal(s)[0]
        ):
            bad += 1
    loop = verify_loop_bound(LOOP_DEFAULT)
    secs = time.perf_counter() - t0
    ok = bad == 0 and loop.ok and len(loop.equality_cases) == 3 and secs < 120
    record(8, ok, f"500 decompositions, {bad} failures; loop bound n<=3 over {loop.population} classes, "
                  f"equality on {len(loop.equality_cases)} flowers only; {secs:.1f}s (<120s)")


def test_criterion_09_neighbourhood_uniqueness():
    checked = 0
    bad = []
    classes = 0
    for g in enumerate_lh_triangulation_candidates(7):
        if oracle_embed(g) is None:
            continue
        classes += 1
        for v in g.vertices():
            checked += 1
            if len(neighborhood_hamiltonian_cycles(g, v)) != 1:
                bad.append((canonical_code(g).hex(), g.labels[v]))
    ok = not bad and classes == 1 + 1 + 1 + 2 + 5
    record(9, ok, f"{classes} planar triangulations n<=7, {checked} vertices, {len(bad)} violations")


def test_criterion_10_determinism():
    threads = max(2, os.cpu_count() or 2)
    runs = {
        "lh-simple": lambda t: verify_lh_bound(SIMPLE_DEFAULT, threads=t),
        "lh-multi": lambda t: verify_lh_bound(MULTI_DEFAULT, threads=t),
        "maximal-simple": lambda t: verify_maximal_embeddings(SIMPLE_DEFAULT, threads=t),
    }
    same = {}
    for key, fn in runs.items():
        first = _timed(key, lambda: fn(1))[0].to_json(timing=False)
        second = fn(1).to_json(timing=False)
        parallel = fn(threads).to_json(timing=False)
        same[key] = first == second == parallel
    record(10, all(same.values()), f"reports byte-identical across two runs and threads 1 vs {threads}: {same}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
