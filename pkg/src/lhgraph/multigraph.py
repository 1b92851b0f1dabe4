"""Loopless-by-default multigraphs with darts.

Vertices and edges carry dense integer ids; user-facing vertex labels are kept
alongside.  Edge ``e`` has two darts, ``Dart(e, 0)`` attached to ``ends[e][0]``
and ``Dart(e, 1)`` attached to ``ends[e][1]``.  Graphs are immutable.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DuplicateLabel, LoopForbidden, TooLarge, UnknownEndpoint, UnknownVertex

CANONICAL_CAP = 10


class Dart(NamedTuple):
    edge: int
    end: int

    @property
    def partner(self) -> "Dart":
        return Dart(self.edge, 1 - self.end)


class Multigraph:
    """An undirected multigraph; loops only when ``loops_allowed`` is set."""

    __slots__ = ("labels", "ends", "loops_allowed", "_index", "_darts_at", "_mult", "_nbrs")

    def __init__(self, labels: Sequence[str], ends: Sequence[tuple[int, int]], loops_allowed: bool = False):
        self.labels = tuple(str(x) for x in labels)
        self.ends = tuple((int(a), int(b)) for a, b in ends)
        self.loops_allowed = bool(loops_allowed)
        index = {}
        for i, lab in enumerate(self.labels):
            if lab in index:
                raise DuplicateLabel(f"duplicate vertex label {lab!r}")
            index[lab] = i
        self._index = index
        n = len(self.labels)
        darts_at: list[list[Dart]] = [[] for _ in range(n)]
        mult: Counter = Counter()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e, (a, b) in enumerate(self.ends):
            if not (0 <= a < n and 0 <= b < n):
                raise UnknownEndpoint(f"edge {e} has an endpoint outside 0..{n - 1}")
            if a == b and not self.loops_allowed:
                raise LoopForbidden(f"edge {e} is a loop at {self.labels[a]!r} but loops are not allowed")
            darts_at[a].append(Dart(e, 0))
            darts_at[b].append(Dart(e, 1))
            mult[(min(a, b), max(a, b))] += 1
            if a != b:
                nbrs[a].add(b)
                nbrs[b].add(a)
        self._darts_at = tuple(tuple(sorted(ds)) for ds in darts_at)
        self._mult = dict(mult)
        self._nbrs = tuple(frozenset(s) for s in nbrs)

    # basic accessors -----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.ends)

    def vertices(self) -> range:
        return range(len(self.labels))

    def index(self, label) -> int:
        """Vertex id for ``label``; integer ids pass through after a range check."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.n:
                return int(label)
            raise UnknownVertex(f"no vertex with id {label}")
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownVertex(f"no vertex labelled {label!r}") from None

    def darts_at(self, v: int) -> tuple[Dart, ...]:
        return self._darts_at[v]

    def degree(self, v: int) -> int:
        return len(self._darts_at[v])

    def tail(self, d: Dart) -> int:
        return self.ends[d.edge][d.end]

    def head(self, d: Dart) -> int:
        return self.ends[d.edge][1 - d.end]

    def multiplicity(self, a: int, b: int) -> int:
        return self._mult.get((min(a, b), max(a, b)), 0)

    def adjacent(self, a: int, b: int) -> bool:
        return a != b and b in self._nbrs[a]

    def neighbors(self, v: int) -> frozenset[int]:
        """Distinct neighbours of ``v`` other than ``v`` itself."""
        return self._nbrs[v]

    def is_loop(self, e: int) -> bool:
        a, b = self.ends[e]
        return a == b

    def has_loops(self) -> bool:
        return any(a == b for a, b in self.ends)

    def edges_between(self, a: int, b: int) -> list[int]:
        lo, hi = min(a, b), max(a, b)
        return [e for e, (x, y) in enumerate(self.ends) if min(x, y) == lo and max(x, y) == hi]

    def is_simple(self) -> bool:
        return all(c == 1 and a != b for (a, b), c in self._mult.items())

    def label_multiset(self) -> Counter:
        """Edges as a multiset of unordered label pairs (label-level identity)."""
        return Counter(tuple(sorted((self.labels[a], self.labels[b]))) for a, b in self.ends)

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m}, loops_allowed={self.loops_allowed})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (self.labels, self.ends, self.loops_allowed) == (other.labels, other.ends, other.loops_allowed)

    def __hash__(self) -> int:
        return hash((self.labels, self.ends, self.loops_allowed))


def build_graph(labels: Iterable, edge_list: Iterable[tuple], loops_allowed: bool = False) -> Multigraph:
    """Build a validated multigraph from vertex labels and label pairs."""
    labels = [str(x) for x in labels]
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabel(f"duplicate vertex label {lab!r}")
        index[lab] = i
    ends = []
    for k, (a, b) in enumerate(edge_list):
        try:
            ends.append((index[str(a)], index[str(b)]))
        except KeyError as exc:
            raise UnknownEndpoint(f"edge {k} references unknown vertex {exc.args[0]!r}") from None
    return Multigraph(labels, ends, loops_allowed)


def is_simple_vertex(g: Multigraph, v) -> bool:
    """True iff no two edges at ``v`` share their endpoints; a loop makes ``v`` non-simple."""
    v = g.index(v)
    seen = set()
    for d in g.darts_at(v):
        w = g.head(d)
        if w == v or w in seen:
            return False
        seen.add(w)
    return True


def induced_neighborhood(g: Multigraph, v) -> Multigraph:
    """``G[N(v)]``: the subgraph induced on the distinct neighbours of ``v``."""
    v = g.index(v)
    nb = sorted(g.neighbors(v))
    local = {w: i for i, w in enumerate(nb)}
    ends = [(local[a], local[b]) for a, b in g.ends if a in local and b in local]
    return Multigraph([g.labels[w] for w in nb], ends, g.loops_allowed)


def is_connected(g: Multigraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == g.n


def components(g: Multigraph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def adjacency_matrix(g: Multigraph) -> np.ndarray:
    """Multiplicity matrix; the diagonal holds loop counts."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for x, y in g.ends:
        if x == y:
            a[x, x] += 1
        else:
            a[x, y] += 1
            a[y, x] += 1
    return a


@lru_cache(maxsize=256)
def _block_permutations(sizes: tuple[int, ...]) -> np.ndarray:
    """All orderings of consecutive blocks of the given sizes, permuting within blocks only."""
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(list(itertools.permutations(range(start, start + s))))
        start += s
    rows = [sum(choice, ()) for choice in itertools.product(*blocks)]
    return np.asarray(rows, dtype=np.intp).reshape(len(rows), start)


def canonical_code(g: Multigraph, cap: int = CANONICAL_CAP) -> bytes:
    """Isomorphism-invariant byte code.

    Vertices are first grouped by (degree, loop count); the code is the
    lexicographically least upper-triangular multiplicity vector over all
    orderings that respect the grouping.
    """
    n = g.n
    if n > cap:
        raise TooLarge(f"canonical_code supports at most {cap} vertices, got {n}")
    if n == 0:
        return b"\x00"
    a = adjacency_matrix(g)
    if a.max(initial=0) > 255:
        raise TooLarge("edge multiplicity above 255")
    keys = [(g.degree(v), int(a[v, v])) for v in range(n)]
    order = sorted(range(n), key=lambda v: (keys[v], v))
    sizes = tuple(len(list(grp)) for _, grp in itertools.groupby(order, key=lambda v: keys[v]))
    base = np.asarray(order, dtype=np.intp)
    perms = base[_block_permutations(sizes)]
    iu = np.triu_indices(n)
    codes = a[perms[:, :, None], perms[:, None, :]][:, iu[0], iu[1]]
    # lexicographic minimum row
    rows = np.arange(codes.shape[0])
    for col in range(codes.shape[1]):
        column = codes[rows, col]
        rows = rows[column == column.min()]
        if len(rows) == 1:
            break
    header = bytes([n]) + bytes(x for k in sorted(keys) for x in (min(k[0], 255), k[1]))
    return header + bytes(codes[rows[0]].astype(np.uint8).tolist())
