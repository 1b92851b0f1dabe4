"""Local Hamiltonicity: Hamiltonian orderings of the darts around a vertex."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import HasLoops, NonSimpleVertex, TooLarge
from .multigraph import Dart, Multigraph, induced_neighborhood, is_simple_vertex

DEGREE_CAP = 12


@dataclass(frozen=True)
class HamiltonianOrdering:
    vertex: int
    order: tuple[Dart, ...]

    def to_json(self, g: Multigraph) -> dict:
        return {"vertex": g.labels[self.vertex], "order": [[d.edge, d.end] for d in self.order]}


@dataclass(frozen=True)
class HamiltonianCertificate:
    orderings: tuple[HamiltonianOrdering, ...]

    def to_json(self, g: Multigraph) -> list:
        return [o.to_json(g) for o in self.orderings]


def _check_loopless(g: Multigraph):
    if g.has_loops():
        raise HasLoops("local Hamiltonicity is defined here for loopless graphs")


def corner_ok(g: Multigraph, v: int, a: int, b: int) -> bool:
    """Can the far ends ``a``, ``b`` of two consecutive darts at ``v`` share a face in a maximal embedding?"""
    return a == b or a == v or b == v or g.adjacent(a, b)


def validate_ordering(g: Multigraph, v: int, order) -> bool:
    """Independent re-check of a claimed Hamiltonian ordering at ``v``."""
    order = [Dart(*d) for d in order]
    if sorted(order) != sorted(g.darts_at(v)):
        return False
    d = len(order)
    for i in range(d):
        a = g.head(order[i])
        b = g.head(order[(i + 1) % d])
        if a != b and not g.adjacent(a, b):
            return False
    return True


def _neighbor_cycle(g: Multigraph, v: int) -> list[int] | None:
    """Backtracking over the multiset of far endpoints; the first is pinned."""
    darts = g.darts_at(v)
    d = len(darts)
    if d <= 1:
        return [g.head(x) for x in darts]
    counts: dict[int, int] = {}
    for x in darts:
        w = g.head(x)
        counts[w] = counts.get(w, 0) + 1
    first = g.head(darts[0])
    counts[first] -= 1
    seq = [first]
    keys = sorted(counts)

    def ok(a, b):
        return a == b or g.adjacent(a, b)

    def extend() -> bool:
        if len(seq) == d:
            return ok(seq[-1], seq[0])
        last = seq[-1]
        for w in keys:
            if counts[w] and ok(last, w):
                counts[w] -= 1
                seq.append(w)
                if extend():
                    return True
                seq.pop()
                counts[w] += 1
        return False

    return seq if extend() else None


def hamiltonian_ordering(g: Multigraph, v, degree_cap: int = DEGREE_CAP) -> HamiltonianOrdering | None:
    """First Hamiltonian ordering at ``v`` under the deterministic dart order, or None."""
    _check_loopless(g)
    v = g.index(v)
    if g.degree(v) > degree_cap:
        raise TooLarge(f"vertex {g.labels[v]!r} has degree {g.degree(v)} > cap {degree_cap}")
    seq = _neighbor_cycle(g, v)
    if seq is None:
        return None
    pools: dict[int, list[Dart]] = {}
    for x in g.darts_at(v):
        pools.setdefault(g.head(x), []).append(x)
    taken: dict[int, int] = {}
    order = []
    for w in seq:
        i = taken.get(w, 0)
        order.append(pools[w][i])
        taken[w] = i + 1
    return HamiltonianOrdering(v, tuple(order))


def is_locally_hamiltonian(g: Multigraph, degree_cap: int = DEGREE_CAP):
    """Return ``(True, certificate)`` or ``(False, least failing vertex id)``."""
    _check_loopless(g)
    found = []
    for v in g.vertices():
        o = hamiltonian_ordering(g, v, degree_cap)
        if o is None:
            return False, v
        found.append(o)
    return True, HamiltonianCertificate(tuple(found))


def is_lh(g: Multigraph) -> bool:
    """Boolean shortcut used by the enumerators."""
    for v in g.vertices():
        if _neighbor_cycle(g, v) is None:
            return False
    return True


def iter_dart_orderings(g: Multigraph, v: int, corners: str = "any") -> Iterator[tuple[Dart, ...]]:
    """Cyclic orderings of the darts at ``v`` with the least dart first.

    ``corners`` selects a filter on consecutive far endpoints ``a, b``:
    ``"any"`` (no filter), ``"maximal"`` (``corner_ok``, necessary for an
    edge-maximal scheme) or ``"triangular"`` (``a != b`` and adjacent,
    necessary for a loopless triangulation).
    """
    darts = g.darts_at(v)
    d = len(darts)
    if d == 0:
        yield ()
        return
    heads = {x: g.head(x) for x in darts}
    if corners == "any":
        def ok(a, b):
            return True
    elif corners == "maximal":
        def ok(a, b):
            return corner_ok(g, v, heads[a], heads[b])
    elif corners == "triangular":
        def ok(a, b):
            return heads[a] != heads[b] and g.adjacent(heads[a], heads[b])
    else:
        raise ValueError(corners)
    seq = [darts[0]]
    used = {darts[0]}

    def extend():
        if len(seq) == d:
            if d == 1 or ok(seq[-1], seq[0]):
                yield tuple(seq)
            return
        for x in darts:
            if x not in used and ok(seq[-1], x):
                used.add(x)
                seq.append(x)
                yield from extend()
                seq.pop()
                used.discard(x)

    yield from extend()


def neighborhood_hamiltonian_cycles(g: Multigraph, v, cap: int = 1000) -> list[tuple[int, ...]]:
    """Distinct Hamiltonian cycles of ``G[N(v)]`` up to rotation and reversal.

    Cycles are vertex sequences in ``g``'s ids.  On one or two vertices a
    cyclic sequence whose consecutive members are adjacent counts as a cycle.
    """
    _check_loopless(g)
    v = g.index(v)
    if not is_simple_vertex(g, v):
        raise NonSimpleVertex(f"vertex {g.labels[v]!r} is not simple")
    h = induced_neighborhood(g, v)
    ids = sorted(g.neighbors(v))
    k = h.n
    if k == 0:
        return []
    if k == 1:
        return [(ids[0],)]
    out = []
    seq = [0]
    used = {0}

    def extend():
        if len(out) >= cap:
            return
        if len(seq) == k:
            if h.adjacent(seq[-1], seq[0]) and (k <= 2 or seq[1] < seq[-1]):
                out.append(tuple(ids[i] for i in seq))
            return
        for x in range(1, k):
            if x not in used and h.adjacent(seq[-1], x):
                used.add(x)
                seq.append(x)
                extend()
                seq.pop()
                used.discard(x)

    extend()
    return out
