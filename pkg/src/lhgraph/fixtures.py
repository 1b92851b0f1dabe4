"""Bundled example graphs and schemes, found by search where needed."""
from __future__ import annotations

import os

from .embedding import (
    EmbeddingScheme,
    Orientation,
    euler_genus,
    face_sets_equal,
    is_edge_maximal,
    rotation_orientation_match,
    trace_faces,
)
from .enumeration import enumerate_schemes
from .flowers import Attachment, FlowerDecomposition, build_flower, flower_scheme
from .io import document, dumps, to_dot
from .library import (
    c5_sphere,
    complete_graph,
    digon_triangulation,
    double_octahedron,
    k3_sphere,
    k4_sphere,
    octahedron,
    projective_example,
)
from .triangulation import all_sphere_triangulations, oracle_embed, reconstruct_triangulation


def find_k4_projective() -> EmbeddingScheme:
    """First edge-maximal K4 scheme with exactly three faces, all of length 4."""
    g = complete_graph(4)
    for s in enumerate_schemes(g, edge_max_only=True):
        faces = trace_faces(s)
        if len(faces) == 3 and all(len(f) == 4 for f in faces):
            return s
    raise LookupError("no three-quadrilateral scheme of K4")


def projective_example_sphere() -> EmbeddingScheme:
    """The sphere scheme whose rotation at u is uv, ua, ub, uv', uc (edges 0,1,2,3,4)."""
    g = projective_example()
    u = g.index("u")
    for s in all_sphere_triangulations(g):
        for cand in (s, s.mirror()):
            if rotation_orientation_match(cand, _u_reference(g), u) == Orientation.SAME:
                return cand
    raise LookupError("sphere scheme with the reference rotation at u not found")


def _u_reference(g):
    # a throwaway scheme carrying only the reference rotation at u
    u = g.index("u")
    rot = [list(g.darts_at(v)) for v in g.vertices()]
    rot[u] = [next(d for d in g.darts_at(u) if d.edge == e) for e in (0, 1, 2, 3, 4)]
    return EmbeddingScheme(g, rot)


def find_projective_counterexample() -> EmbeddingScheme:
    """Edge-maximal genus-1 scheme whose rotation at u mismatches the reference
    sphere rotation, and which mismatches every sphere scheme at some vertex."""
    g = projective_example()
    u = g.index("u")
    ref = projective_example_sphere()
    spheres = all_sphere_triangulations(g)
    for s in enumerate_schemes(g, edge_max_only=True):
        if euler_genus(s) != 1:
            continue
        if rotation_orientation_match(s, ref, u) != Orientation.MISMATCH:
            continue
        if all(any(rotation_orientation_match(s, sp, v) == Orientation.MISMATCH for v in g.vertices())
               for sp in spheres):
            return s
    raise LookupError("no projective counterexample found")


def counterexample_report(s: EmbeddingScheme, sphere: EmbeddingScheme) -> dict:
    g = s.graph
    ok, _ = is_edge_maximal(s)
    spheres = all_sphere_triangulations(g)
    return {
        "euler_genus": euler_genus(s),
        "face_lengths": sorted(len(f) for f in trace_faces(s)),
        "edge_maximal": ok,
        "orientable": s.is_orientable(),
        "orientation_vs_reference_sphere": {
            g.labels[v]: rotation_orientation_match(s, sphere, v).value for v in g.vertices()
        },
        "face_sets_equal_reference_sphere": face_sets_equal(s, sphere),
        "sphere_schemes_up_to_mirror": len(spheres),
        "mismatch_against_every_sphere_scheme": all(
            any(rotation_orientation_match(s, sp, v) == Orientation.MISMATCH for v in g.vertices())
            for sp in spheres
        ),
    }


SAMPLE_FLOWERS = {
    "flower_k2": FlowerDecomposition("K2"),
    "flower_k2_petal": FlowerDecomposition("K2", (Attachment("K2o", "0"),)),
    "flower_k3_three_petals": FlowerDecomposition(
        "K3", (Attachment("K2o", "0"), Attachment("K2o", "1"), Attachment("K2o", "2"))
    ),
    "flower_mixed": FlowerDecomposition(
        "K3", (Attachment("K3o", "0"), Attachment("K2o", "3"), Attachment("K3o", "1"))
    ),
}


def fixture_documents() -> dict[str, dict]:
    docs = {}
    s = k3_sphere()
    docs["k3"] = document(s.graph, s)
    s = k4_sphere()
    docs["k4_sphere"] = document(s.graph, s)
    proj = find_k4_projective()
    docs["k4_projective"] = document(proj.graph, proj)
    docs["k4_projective.report"] = counterexample_report(proj, k4_sphere())
    s = c5_sphere()
    docs["c5_sphere"] = document(s.graph, s)
    g = digon_triangulation()
    docs["digon_triangulation"] = document(g, oracle_embed(g))
    sphere = projective_example_sphere()
    docs["projective_example_sphere"] = document(sphere.graph, sphere)
    pc = find_projective_counterexample()
    docs["projective_example_projective"] = document(pc.graph, pc)
    docs["projective_example_projective.report"] = counterexample_report(pc, sphere)
    g = octahedron()
    docs["octahedron"] = document(g, oracle_embed(g))
    g = double_octahedron()
    s, _ = reconstruct_triangulation(g)
    docs["double_octahedron"] = document(g, s)
    for name, d in SAMPLE_FLOWERS.items():
        docs[name] = document(build_flower(d), flower_scheme(d))
        docs[name + ".decomposition"] = d.to_json()
    return docs


def write_fixtures(directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, doc in fixture_documents().items():
        path = os.path.join(directory, name + ".json")
        with open(path, "w") as fh:
            fh.write(dumps(doc))
        written.append(path)
        if "vertices" in doc:
            from .io import parse_document

            g, s = parse_document(dumps(doc))
            dot = os.path.join(directory, name + ".dot")
            with open(dot, "w") as fh:
                fh.write(to_dot(g, s, name))
            written.append(dot)
    return sorted(written)
