"""Exhaustive desk-scale enumeration and claim verification.

Graphs are generated as labelled multiplicity vectors, filtered, and reduced
to one representative per isomorphism class with ``canonical_code``.  Work is
split into chunks; results are merged in chunk order, so reports do not depend
on the worker count.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Optional

from .embedding import (
    EmbeddingScheme,
    Orientation,
    euler_genus,
    face_sets_equal,
    is_edge_maximal_fast,
    is_sphere_triangulation,
    rotation_orientation_match,
    spanning_tree,
)
from .errors import LHGraphError, RangeTooLarge
from .flowers import build_flower, is_flower
from .hamiltonian import is_lh, iter_dart_orderings, validate_ordering
from .multigraph import Multigraph, canonical_code, is_connected
from .triangulation import lemma1_candidates, oracle_embed, reconstruct_triangulation

HARD_MAX_N = 8
DART_CAP = 24
CHUNK = 4096


@dataclass(frozen=True)
class EnumerationRange:
    max_n: int
    max_multiplicity: int = 1
    allow_loops: bool = False
    max_edges: Optional[int] = None
    max_darts: Optional[int] = None
    min_n: int = 1
    min_edges: int = 0
    # per-n cap: m <= 3n - 6 + max_excess
    max_excess: Optional[int] = None
    min_degree: int = 0

    def __post_init__(self):
        if self.max_n < 1 or self.max_multiplicity < 1:
            raise RangeTooLarge("caps must be positive")
        if self.max_n > HARD_MAX_N:
            raise RangeTooLarge(f"max_n {self.max_n} exceeds hard cap {HARD_MAX_N}")

    def edge_cap(self, n: int) -> int:
        caps = [n * (n - 1) // 2 * self.max_multiplicity + (n * self.max_multiplicity if self.allow_loops else 0)]
        if self.max_edges is not None:
            caps.append(self.max_edges)
        if self.max_darts is not None:
            caps.append(self.max_darts // 2)
        if self.max_excess is not None:
            caps.append(3 * n - 6 + self.max_excess)
        return min(caps)

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


SIMPLE_DEFAULT = EnumerationRange(max_n=6)
MULTI_DEFAULT = EnumerationRange(max_n=5, max_multiplicity=2, max_excess=1)
LOOP_DEFAULT = EnumerationRange(max_n=3, max_multiplicity=6, allow_loops=True, max_darts=12, min_n=2)


@dataclass
class VerificationReport:
    claim: str
    range: dict
    population: int = 0
    equality_cases: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "claim": self.claim,
            "range": self.range,
            "population": self.population,
            "equality_cases": self.equality_cases,
            "violations": self.violations,
            "info": self.info,
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# labelled generation

def _slots(n: int, allow_loops: bool) -> list[tuple[int, int]]:
    slots = list(itertools.combinations(range(n), 2))
    if allow_loops:
        slots += [(i, i) for i in range(n)]
    return slots


def _vectors(nslots: int, cap_each: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    vec = [0] * nslots

    def rec(i, total):
        if i == nslots:
            if total >= lo:
                yield tuple(vec)
            return
        room = (nslots - i) * cap_each
        if total + room < lo:
            return
        for c in range(0, min(cap_each, hi - total) + 1):
            vec[i] = c
            yield from rec(i + 1, total + c)
        vec[i] = 0

    yield from rec(0, 0)


def graph_from_vector(n: int, slots, vec, allow_loops: bool = False) -> Multigraph:
    ends = [s for s, c in zip(slots, vec) for _ in range(c)]
    return Multigraph([str(i) for i in range(n)], ends, loops_allowed=allow_loops)


def _connected_vec(n, slots, vec) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), c in zip(slots, vec):
        if c and a != b:
            parent[find(a)] = find(b)
    return len({find(x) for x in range(n)}) == 1


def _process_chunk(args):
    n, slots, vecs, allow_loops, min_degree, predicate = args
    out = []
    for vec in vecs:
        if not _connected_vec(n, slots, vec):
            continue
        if min_degree:
            deg = [0] * n
            for (a, b), c in zip(slots, vec):
                deg[a] += c
                deg[b] += c
            if min(deg) < min_degree:
                continue
        g = graph_from_vector(n, slots, vec, allow_loops)
        if predicate is not None and not predicate(g):
            continue
        out.append((g.m, canonical_code(g), vec))
    return out


def _chunks(it, size):
    it = iter(it)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def enumerate_graphs(
    r: EnumerationRange,
    predicate: Optional[Callable[[Multigraph], bool]] = None,
    threads: int = 1,
) -> Iterator[Multigraph]:
    """Connected graphs in range, one per isomorphism class, ordered by (n, m, code).

    ``predicate`` (a picklable top-level function) filters labelled graphs before
    deduplication.
    """
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for n in range(r.min_n, r.max_n + 1):
            slots = _slots(n, r.allow_loops)
            hi = r.edge_cap(n)
            lo = max(r.min_edges, n - 1)
            if hi < lo:
                continue
            jobs = (
                (n, slots, block, r.allow_loops, r.min_degree, predicate)
                for block in _chunks(_vectors(len(slots), r.max_multiplicity, lo, hi), CHUNK)
            )
            results = pool.map(_process_chunk, jobs) if pool else map(_process_chunk, jobs)
            classes: dict[bytes, tuple] = {}
            for block in results:
                for m, code, vec in block:
                    if code not in classes or vec < classes[code][1]:
                        classes[code] = (m, vec)
            for code, (m, vec) in sorted(classes.items(), key=lambda kv: (kv[1][0], kv[0])):
                yield graph_from_vector(n, slots, vec, r.allow_loops)
    finally:
        if pool:
            pool.shutdown()


def enumerate_lh_triangulation_candidates(max_n: int, threads: int = 1) -> Iterator[Multigraph]:
    """Simple connected LH graphs with exactly ``3n - 6`` edges, ``3 <= n <= max_n``.

    Each ``n`` is enumerated at its exact edge count, so ``n = 7`` stays cheap.
    """
    for n in range(3, max_n + 1):
        r = EnumerationRange(max_n=n, min_n=n, min_edges=3 * n - 6, max_excess=0,
                             min_degree=3 if n >= 4 else 0)
        yield from enumerate_graphs(r, predicate=is_lh, threads=threads)


# ---------------------------------------------------------------------------
# schemes

def enumerate_schemes(g: Multigraph, edge_max_only: bool = False) -> Iterator[EmbeddingScheme]:
    """All schemes of ``g`` up to spanning-tree signature gauge and global reflection.

    Rotations are cyclic orders with the least dart first.  With
    ``edge_max_only`` the rotations are restricted to orders whose consecutive
    far ends are equal, adjacent or the vertex itself (a necessary condition),
    and every scheme is then checked for edge-maximality.
    """
    if 2 * g.m > DART_CAP:
        raise RangeTooLarge(f"{2 * g.m} darts exceeds the cap of {DART_CAP}")
    mode = "maximal" if edge_max_only else "any"
    options = [list(iter_dart_orderings(g, v, mode)) for v in g.vertices()]
    if any(not o for o in options):
        return
    rev_idx = []
    for opts in options:
        where = {r: i for i, r in enumerate(opts)}
        rev_idx.append([where[(r[0],) + tuple(reversed(r[1:])) if r else r] for r in opts])
    tree = set(spanning_tree(g))
    free = [e for e in range(g.m) if e not in tree]
    for choice in itertools.product(*[range(len(o)) for o in options]):
        mirrored = tuple(rev_idx[v][c] for v, c in enumerate(choice))
        if mirrored < choice:
            continue
        rot = [options[v][c] for v, c in enumerate(choice)]
        for signs in itertools.product((1, -1), repeat=len(free)):
            sig = [1] * g.m
            for e, s in zip(free, signs):
                sig[e] = s
            s = EmbeddingScheme(g, rot, sig, check=False)
            if edge_max_only and not is_edge_maximal_fast(s):
                continue
            yield s


# ---------------------------------------------------------------------------
# claims

def _hex(g: Multigraph) -> str:
    return canonical_code(g).hex()


def _graph_json(g: Multigraph) -> dict:
    from .io import graph_to_json

    return graph_to_json(g)


def _violation(kind: str, g: Multigraph, scheme: Optional[EmbeddingScheme] = None, **extra) -> dict:
    from .io import document

    out = {"kind": kind, "witness": document(g, scheme)}
    out.update(extra)
    return out


def contains_k4(g: Multigraph) -> bool:
    for quad in itertools.combinations(g.vertices(), 4):
        if all(g.adjacent(a, b) for a, b in itertools.combinations(quad, 2)):
            return True
    return False


def verify_lh_bound(r: EnumerationRange = SIMPLE_DEFAULT, threads: int = 1) -> VerificationReport:
    """Connected locally Hamiltonian graphs have ``m >= 3n - 6``; equality cases triangulate the sphere."""
    if r.allow_loops:
        raise RangeTooLarge("the 3n-6 bound is for loopless graphs")
    t0 = time.perf_counter()
    rep = VerificationReport("lh-bound", r.to_json())
    per_n = {}
    rng = EnumerationRange(**{**asdict(r), "min_n": max(r.min_n, 3)})
    for g in enumerate_graphs(rng, predicate=is_lh, threads=threads):
        n, m = g.n, g.m
        rep.population += 1
        row = per_n.setdefault(str(n), {"lh_classes": 0, "equality": 0})
        row["lh_classes"] += 1
        if m < 3 * n - 6:
            rep.violations.append(_violation("below-bound", g))
            continue
        if m > 3 * n - 6:
            continue
        row["equality"] += 1
        rep.equality_cases.append(_hex(g))
        try:
            s, trace = reconstruct_triangulation(g)
        except LHGraphError as exc:
            rep.violations.append(_violation("reconstruct-failed", g, message=str(exc)))
            continue
        if not is_sphere_triangulation(s) or s.face_count() != 2 * n - 4:
            rep.violations.append(_violation("reconstruct-invalid", g, s))
        if trace.backtracks:
            rep.info.setdefault("backtracking_needed", []).append(_hex(g))
        o = oracle_embed(g)
        if o is None or not is_sphere_triangulation(o) or o.face_count() != s.face_count():
            rep.violations.append(_violation("oracle-disagrees", g, s))
    rep.info["per_n"] = per_n
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_maximal_embeddings(r: EnumerationRange = SIMPLE_DEFAULT, threads: int = 1) -> VerificationReport:
    """Edge-maximal schemes of graphs with ``m <= 3n - 6``: edge count, orientation and face agreement."""
    if r.allow_loops:
        raise RangeTooLarge("maximal-embedding claims are for loopless graphs")
    t0 = time.perf_counter()
    darts = min(r.max_darts or DART_CAP, DART_CAP)
    rng = EnumerationRange(**{**asdict(r), "min_n": max(r.min_n, 3), "max_excess": 0, "max_darts": darts})
    rep = VerificationReport("maximal", r.to_json())
    genus_census: dict[str, int] = {}
    orientation_failures = []
    face_failures = []
    for g in enumerate_graphs(rng, threads=threads):
        rep.population += 1
        n, m = g.n, g.m
        sphere = None
        simple = g.is_simple()
        k4free = simple and not contains_k4(g)
        count = 0
        for s in enumerate_schemes(g, edge_max_only=True):
            count += 1
            genus = euler_genus(s)
            genus_census[str(genus)] = genus_census.get(str(genus), 0) + 1
            if m != 3 * n - 6:
                rep.violations.append(_violation("edge-count", g, s))
                continue
            for v in g.vertices():
                if not validate_ordering(g, v, s.rotation[v]):
                    rep.violations.append(_violation("rotation-not-hamiltonian", g, s, vertex=g.labels[v]))
                if len(g.neighbors(v)) < 2:
                    rep.violations.append(_violation("too-few-neighbours", g, s, vertex=g.labels[v]))
            if sphere is None:
                try:
                    sphere, _ = reconstruct_triangulation(g)
                except LHGraphError as exc:
                    rep.violations.append(_violation("reconstruct-failed", g, s, message=str(exc)))
                    break
            bad = [g.labels[v] for v in g.vertices()
                   if rotation_orientation_match(s, sphere, v) == Orientation.MISMATCH]
            if simple and bad:
                rep.violations.append(_violation("orientation", g, s, vertices=bad))
            elif bad:
                orientation_failures.append(_hex(g))
            if not face_sets_equal(s, sphere):
                if k4free and n >= 4:
                    rep.violations.append(_violation("faces", g, s))
                else:
                    face_failures.append(_hex(g))
        if count and m == 3 * n - 6:
            rep.equality_cases.append({"code": _hex(g), "maximal_schemes": count,
                                       "simple": simple, "k4_free": k4free})
    rep.info["genus_census"] = genus_census
    rep.info["orientation_mismatch_multigraphs"] = sorted(set(orientation_failures))
    rep.info["face_mismatch_outside_hypotheses"] = sorted(set(face_failures))
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_loop_bound(r: EnumerationRange = LOOP_DEFAULT, threads: int = 1) -> VerificationReport:
    """Edge-maximal schemes of loop graphs have ``m >= 2n - 3``, with equality exactly on flowers.

    Only classes with ``m <= 2n - 3`` can violate the claim, so only their schemes are scanned.
    """
    if not r.allow_loops:
        raise RangeTooLarge("loop bound needs allow_loops")
    if r.max_n > 3:
        raise RangeTooLarge("loop-bound enumeration is capped at n <= 3")
    t0 = time.perf_counter()
    rng = EnumerationRange(**{**asdict(r), "min_n": max(r.min_n, 2)})
    rep = VerificationReport("loop-bound", r.to_json())
    scanned = 0
    for g in enumerate_graphs(rng, threads=threads):
        rep.population += 1
        n, m = g.n, g.m
        flower = is_flower(g)
        if m > 2 * n - 3:
            if flower is not None:
                rep.violations.append(_violation("flower-edge-count", g))
            continue
        scanned += 1
        maximal = next(enumerate_schemes(g, edge_max_only=True), None)
        if maximal is None:
            if flower is not None:
                rep.violations.append(_violation("flower-without-maximal-scheme", g))
            continue
        if m < 2 * n - 3:
            rep.violations.append(_violation("below-bound", g, maximal))
        elif flower is None:
            rep.violations.append(_violation("equality-not-flower", g, maximal))
        else:
            rep.equality_cases.append(_hex(g))
    rep.info["scanned_classes"] = scanned
    rep.seconds = time.perf_counter() - t0
    return rep


def lemma1_fixtures(count: int, seed: int = 0, max_n: int = 12):
    """Random qualifying fixtures: triangulation gluings whose chosen side has minimum degree >= 4.

    Yields ``(scheme, cycle edge ids, side name)``.
    """
    from .library import glue_along_edge, glue_along_triangle, random_triangulation
    from .triangulation import side_decomposition

    rng = random.Random(seed)
    made = 0
    while made < count:
        inner_n = rng.randint(6, 9)
        inner = random_triangulation(inner_n, rng, min_degree=4)
        if rng.random() < 0.6:
            outer = random_triangulation(rng.randint(4, max_n - inner_n + 3), rng)
            g, cyc, side_labels = glue_along_triangle(outer, inner, rng)
        else:
            outer = random_triangulation(rng.randint(4, max_n - inner_n + 2), rng)
            g, cyc, side_labels = glue_along_edge(outer, inner, rng)
        if g.n > max_n:
            continue
        s, _ = reconstruct_triangulation(g)
        dec = side_decomposition(s, cyc)
        want = frozenset(g.index(x) for x in side_labels)
        name = "interior" if dec.interior == want else "exterior"
        if dec.side(name) != want:
            raise AssertionError("glued side does not match the side decomposition")
        made += 1
        yield s, cyc, name


def verify_lemma1(count: int = 100, seed: int = 0) -> VerificationReport:
    from .library import double_octahedron, triangle_edges

    t0 = time.perf_counter()
    rep = VerificationReport("lemma1", {"fixtures": count, "seed": seed, "max_n": 12})
    g = double_octahedron()
    s, _ = reconstruct_triangulation(g)
    cases = [(s, triangle_edges(g, "abc"), side) for side in ("interior", "exterior")]
    cases += list(lemma1_fixtures(count, seed))
    sizes = {}
    for s, cyc, side in cases:
        rep.population += 1
        found = lemma1_candidates(s, cyc, side)
        sizes[str(len(found))] = sizes.get(str(len(found)), 0) + 1
        if len(found) < 2:
            rep.violations.append(_violation("fewer-than-two", s.graph, s, cycle=list(cyc), side=side))
    rep.info["candidate_counts"] = sizes
    rep.seconds = time.perf_counter() - t0
    return rep


CLAIMS = {
    "lh-bound": verify_lh_bound,
    "maximal": verify_maximal_embeddings,
    "loop-bound": verify_loop_bound,
    "lemma1": verify_lemma1,
}
