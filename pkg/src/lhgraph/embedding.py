"""Embedding schemes: rotation systems with edge signatures.

A scheme assigns to each vertex a cyclic order of its darts and to each edge a
sign.  Faces are traced on (dart, orientation) states: leaving along dart
``d`` with orientation ``s``, we arrive at the far end with ``s * sign(edge)``
and continue with the successor (``+1``) or predecessor (``-1``) of the
partner dart in that vertex's rotation.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .errors import Disconnected, GraphMismatch, HasLoops, InvalidScheme
from .multigraph import Dart, Multigraph, is_connected


def _min_rotation(seq: Sequence) -> tuple:
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


class EmbeddingScheme:
    """Immutable rotation system plus signature over a fixed multigraph."""

    __slots__ = ("graph", "rotation", "signature", "_succ", "_pred")

    def __init__(self, graph: Multigraph, rotation, signature=None, check: bool = True):
        self.graph = graph
        if isinstance(rotation, Mapping):
            rotation = [rotation.get(v, ()) for v in graph.vertices()]
        self.rotation = tuple(tuple(Dart(*d) for d in rot) for rot in rotation)
        if signature is None:
            signature = (1,) * graph.m
        elif isinstance(signature, Mapping):
            signature = tuple(int(signature.get(e, 1)) for e in range(graph.m))
        self.signature = tuple(int(x) for x in signature)
        if check:
            self._validate()
        m2 = 2 * graph.m
        succ = [0] * m2
        pred = [0] * m2
        for rot in self.rotation:
            k = len(rot)
            for i, d in enumerate(rot):
                a = 2 * d.edge + d.end
                succ[a] = 2 * rot[(i + 1) % k].edge + rot[(i + 1) % k].end
                pred[a] = 2 * rot[i - 1].edge + rot[i - 1].end
        self._succ = succ
        self._pred = pred

    def _validate(self):
        g = self.graph
        if len(self.rotation) != g.n:
            raise InvalidScheme(f"rotation covers {len(self.rotation)} vertices, graph has {g.n}")
        for v, rot in enumerate(self.rotation):
            if sorted(rot) != list(g.darts_at(v)):
                raise InvalidScheme(f"rotation at {g.labels[v]!r} is not a permutation of its darts")
        if len(self.signature) != g.m or any(x not in (1, -1) for x in self.signature):
            raise InvalidScheme("signature must give +1 or -1 for every edge")

    # helpers -------------------------------------------------------------
    def succ(self, d: Dart) -> Dart:
        a = self._succ[2 * d.edge + d.end]
        return Dart(a >> 1, a & 1)

    def pred(self, d: Dart) -> Dart:
        a = self._pred[2 * d.edge + d.end]
        return Dart(a >> 1, a & 1)

    def mirror(self) -> "EmbeddingScheme":
        rot = [(r[0],) + tuple(reversed(r[1:])) if r else r for r in self.rotation]
        return EmbeddingScheme(self.graph, rot, self.signature, check=False)

    def is_orientable(self) -> bool:
        """Whether an all-positive gauge is achievable (fundamental cycles all even)."""
        return all(x == 1 for x in normalize_gauge(self).signature)

    def __eq__(self, other):
        if not isinstance(other, EmbeddingScheme):
            return NotImplemented
        return (self.graph, self.rotation, self.signature) == (other.graph, other.rotation, other.signature)

    def __hash__(self):
        return hash((self.rotation, self.signature))

    def __repr__(self):
        return f"EmbeddingScheme(n={self.graph.n}, m={self.graph.m})"

    # raw orbits ----------------------------------------------------------
    def orbits(self) -> list[list[tuple[int, int]]]:
        """All orbits of (int dart, orientation) states; every face appears twice."""
        sig = self.signature
        succ, pred = self._succ, self._pred
        m2 = 2 * self.graph.m
        seen = bytearray(2 * m2)
        out = []
        for start in range(2 * m2):
            if seen[start]:
                continue
            orbit = []
            st = start
            while not seen[st]:
                seen[st] = 1
                i, neg = st >> 1, st & 1
                orbit.append((i, -1 if neg else 1))
                s2 = (-1 if neg else 1) * sig[i >> 1]
                p = i ^ 1
                j = succ[p] if s2 == 1 else pred[p]
                st = 2 * j + (0 if s2 == 1 else 1)
            out.append(orbit)
        return out

    def face_count(self) -> int:
        return len(self.orbits()) // 2


@dataclass(frozen=True)
class FacialWalk:
    """A face boundary as a canonical cyclic sequence of (dart, orientation) steps."""

    steps: tuple[tuple[Dart, int], ...]

    def __len__(self):
        return len(self.steps)

    @property
    def darts(self) -> tuple[Dart, ...]:
        return tuple(d for d, _ in self.steps)

    def vertices(self, g: Multigraph) -> tuple[int, ...]:
        """Vertices at which the walk's steps start, in walk order."""
        return tuple(g.tail(d) for d in self.darts)

    def boundary_key(self) -> tuple[Dart, ...]:
        """Dart sequence up to rotation and reversal (orientation flags dropped)."""
        ds = self.darts
        rev = tuple(d.partner for d in reversed(ds))
        return min(_min_rotation(ds), _min_rotation(rev))

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(d.edge for d in self.darts))


FaceSet = tuple  # tuple[FacialWalk, ...] sorted by canonical steps


def trace_faces(s: EmbeddingScheme) -> tuple[FacialWalk, ...]:
    sig = s.signature
    faces = set()
    for orbit in s.orbits():
        fwd = tuple((Dart(i >> 1, i & 1), o) for i, o in orbit)
        rev = tuple(
            (Dart(i >> 1, (i & 1) ^ 1), -o * sig[i >> 1]) for i, o in reversed(orbit)
        )
        faces.add(min(_min_rotation(fwd), _min_rotation(rev)))
    return tuple(FacialWalk(f) for f in sorted(faces))


def _require_connected(g: Multigraph):
    if not is_connected(g):
        raise Disconnected("the underlying graph is not connected")


def euler_genus(s: EmbeddingScheme) -> int:
    g = s.graph
    _require_connected(g)
    if g.m == 0:
        # a lone vertex has one face and no darts to trace it with
        return 0
    return 2 - g.n + g.m - s.face_count()


def is_sphere_triangulation(s: EmbeddingScheme) -> bool:
    g = s.graph
    _require_connected(g)
    if g.has_loops():
        raise HasLoops("triangulation test is for loopless graphs")
    orbits = s.orbits()
    if any(len(o) != 3 for o in orbits):
        return False
    return 2 - g.n + g.m - len(orbits) // 2 == 0


class MaximalityWitness(NamedTuple):
    u: int
    v: int
    face: FacialWalk


def _orbit_maximal(g: Multigraph, orbit) -> bool:
    vs = sorted({g.ends[i >> 1][i & 1] for i, _ in orbit})
    for x in range(len(vs)):
        for y in range(x + 1, len(vs)):
            if not g.adjacent(vs[x], vs[y]):
                return False
    return True


def is_edge_maximal_fast(s: EmbeddingScheme) -> bool:
    g = s.graph
    return all(_orbit_maximal(g, o) for o in s.orbits())


def is_edge_maximal(s: EmbeddingScheme):
    """``(True, None)`` or ``(False, MaximalityWitness)`` naming the first offending pair."""
    g = s.graph
    _require_connected(g)
    for face in trace_faces(s):
        vs = sorted(set(face.vertices(g)))
        for x in range(len(vs)):
            for y in range(x + 1, len(vs)):
                if not g.adjacent(vs[x], vs[y]):
                    return False, MaximalityWitness(vs[x], vs[y], face)
    return True, None


class Orientation(str, enum.Enum):
    SAME = "same"
    REVERSED = "reversed"
    MISMATCH = "mismatch"


def _same_graph(s1: EmbeddingScheme, s2: EmbeddingScheme):
    if s1.graph.ends != s2.graph.ends or s1.graph.n != s2.graph.n:
        raise GraphMismatch("schemes are over different graphs")


def cyclic_equal(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and _min_rotation(a) == _min_rotation(b)


def rotation_orientation_match(s1: EmbeddingScheme, s2: EmbeddingScheme, v) -> Orientation:
    _same_graph(s1, s2)
    v = s1.graph.index(v)
    r1, r2 = s1.rotation[v], s2.rotation[v]
    if cyclic_equal(r1, r2):
        return Orientation.SAME
    if cyclic_equal(r1, tuple(reversed(r2))):
        return Orientation.REVERSED
    return Orientation.MISMATCH


def face_sets_equal(s1: EmbeddingScheme, s2: EmbeddingScheme) -> bool:
    _same_graph(s1, s2)
    k1 = sorted(f.boundary_key() for f in trace_faces(s1))
    k2 = sorted(f.boundary_key() for f in trace_faces(s2))
    return k1 == k2


def gauge_flip(s: EmbeddingScheme, v) -> EmbeddingScheme:
    """Reverse the rotation at ``v`` and flip the sign of every non-loop edge at ``v``."""
    g = s.graph
    v = g.index(v)
    rot = list(s.rotation)
    rot[v] = tuple(reversed(rot[v]))
    sig = list(s.signature)
    for d in g.darts_at(v):
        if not g.is_loop(d.edge):
            sig[d.edge] = -sig[d.edge]
    return EmbeddingScheme(g, rot, sig, check=False)


def spanning_tree(g: Multigraph) -> list[int]:
    """BFS spanning forest edges (ids) from vertex 0, scanning darts in id order."""
    tree = []
    seen: set[int] = set()
    for r in g.vertices():
        if r in seen:
            continue
        seen.add(r)
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for d in g.darts_at(x):
                y = g.head(d)
                if y not in seen:
                    seen.add(y)
                    tree.append(d.edge)
                    queue.append(y)
    return tree


def normalize_gauge(s: EmbeddingScheme) -> EmbeddingScheme:
    """Equivalent scheme whose spanning-tree edges (see ``spanning_tree``) all carry sign +1."""
    g = s.graph
    out = s
    seen: set[int] = set()
    for r in g.vertices():
        if r in seen:
            continue
        seen.add(r)
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for d in g.darts_at(x):
                y = g.head(d)
                if y not in seen:
                    seen.add(y)
                    if out.signature[d.edge] == -1:
                        out = gauge_flip(out, y)
                    queue.append(y)
    return out
