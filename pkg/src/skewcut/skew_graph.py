"""Skew-symmetric directed multigraphs.

Vertices are stored as dense indices ``0 .. 2n-1``.  The external vertex
``+i`` maps to index ``2(i-1)`` and ``-i`` to ``2(i-1)+1``, so the conjugate
of a vertex index is ``x ^ 1``.  Arcs are allocated in adjacent pairs
``(2j, 2j+1)`` and the conjugate of an arc is likewise ``a ^ 1``.

Deletions are a per-arc mask (a ``bytearray``); nothing is ever removed
structurally.  Every algorithm in the package takes an optional ``mask``
argument and falls back to ``graph.deleted``.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple, Sequence


class MalformedInput(ValueError):
    """Raised for inputs violating a documented format or range."""


def vertex_index(v: int) -> int:
    """Map a signed vertex id (``±i``, ``i >= 1``) to its dense index."""
    if v > 0:
        return 2 * (v - 1)
    return 2 * (-v - 1) + 1


def vertex_label(x: int) -> int:
    """Inverse of :func:`vertex_index`."""
    i = (x >> 1) + 1
    return -i if x & 1 else i


def conjugate(x: int) -> int:
    """Conjugate of a vertex index or an arc id."""
    return x ^ 1


class SkewGraph:
    """Paired-vertex, paired-arc multigraph with a self-conjugate deletion mask."""

    def __init__(self, n_pairs: int):
        if n_pairs < 0:
            raise MalformedInput("negative vertex-pair count")
        self.n_pairs = n_pairs
        self.tails: list[int] = []
        self.heads: list[int] = []
        self.out_arcs: list[list[int]] = [[] for _ in range(2 * n_pairs)]
        self.in_arcs: list[list[int]] = [[] for _ in range(2 * n_pairs)]
        self.deleted = bytearray()

    @property
    def num_vertices(self) -> int:
        return 2 * self.n_pairs

    @property
    def num_arcs(self) -> int:
        return len(self.tails)

    def add_pair(self, u: int, v: int) -> int:
        """Add arc ``u -> v`` (indices) and its conjugate; return the first arc id."""
        nv = self.num_vertices
        if not (0 <= u < nv and 0 <= v < nv):
            raise MalformedInput(f"vertex index out of range: {u}, {v}")
        a = len(self.tails)
        for t, h in ((u, v), (v ^ 1, u ^ 1)):
            arc = len(self.tails)
            self.tails.append(t)
            self.heads.append(h)
            self.out_arcs[t].append(arc)
            self.in_arcs[h].append(arc)
        self.deleted.extend(b"\x00\x00")
        return a

    def add_signed_pair(self, u: int, v: int) -> int:
        n = self.n_pairs
        for w in (u, v):
            if w == 0 or abs(w) > n:
                raise MalformedInput(f"vertex {w} outside ±1..±{n}")
        return self.add_pair(vertex_index(u), vertex_index(v))

    def arc(self, a: int) -> tuple[int, int]:
        return self.tails[a], self.heads[a]

    def signed_arc(self, a: int) -> tuple[int, int]:
        return vertex_label(self.tails[a]), vertex_label(self.heads[a])

    def alive(self, a: int, mask: bytearray | None = None) -> bool:
        return not (self.deleted if mask is None else mask)[a]

    def new_mask(self) -> bytearray:
        """A private copy of the deletion mask, for checkpointing."""
        return bytearray(self.deleted)

    def delete_pair(self, a: int, mask: bytearray | None = None) -> None:
        m = self.deleted if mask is None else mask
        m[a] = 1
        m[a ^ 1] = 1

    def restore_pair(self, a: int, mask: bytearray | None = None) -> None:
        m = self.deleted if mask is None else mask
        m[a] = 0
        m[a ^ 1] = 0

    def copy(self) -> "SkewGraph":
        g = SkewGraph(self.n_pairs)
        g.tails = list(self.tails)
        g.heads = list(self.heads)
        g.out_arcs = [list(x) for x in self.out_arcs]
        g.in_arcs = [list(x) for x in self.in_arcs]
        g.deleted = bytearray(self.deleted)
        return g

    def successors(self, mask: bytearray | None = None) -> list[list[int]]:
        """Adjacency lists (vertex indices) of the undeleted arcs."""
        m = self.deleted if mask is None else mask
        heads = self.heads
        return [[heads[a] for a in arcs if not m[a]] for arcs in self.out_arcs]

    def out_boundary(self, vertices, mask: bytearray | None = None) -> list[int]:
        """delta^+(vertices): undeleted arcs leaving the set, ascending."""
        m = self.deleted if mask is None else mask
        inside = vertices if isinstance(vertices, (set, frozenset)) else set(vertices)
        heads = self.heads
        res = [a for v in inside for a in self.out_arcs[v] if not m[a] and heads[a] not in inside]
        res.sort()
        return res

    def check(self) -> None:
        """Assert the involution axioms; raises AssertionError on violation."""
        nv = self.num_vertices
        assert len(self.tails) % 2 == 0
        for x in range(nv):
            assert x ^ 1 != x and (x ^ 1) ^ 1 == x
        for a in range(self.num_arcs):
            b = a ^ 1
            assert b != a and b ^ 1 == a
            assert self.tails[b] == self.heads[a] ^ 1
            assert self.heads[b] == self.tails[a] ^ 1
            assert self.deleted[a] == self.deleted[b]

    def __repr__(self) -> str:
        return f"SkewGraph(n_pairs={self.n_pairs}, arcs={self.num_arcs})"


def build(n_pairs: int, arc_pairs: Iterable[tuple[int, int]]) -> SkewGraph:
    """Build a skew graph from signed arcs; each ``(u, v)`` also adds ``(-v, -u)``."""
    g = SkewGraph(n_pairs)
    for u, v in arc_pairs:
        g.add_signed_pair(u, v)
    g.check()
    return g


def reachable(
    g: SkewGraph,
    sources: Iterable[int],
    extra_deleted: Iterable[int] = (),
    mask: bytearray | None = None,
) -> set[int]:
    """R(sources, deleted ∪ extra_deleted) as a set of vertex indices."""
    m = g.deleted if mask is None else mask
    extra = set(extra_deleted)
    seen = bytearray(g.num_vertices)
    order = []
    queue = deque()
    for s in sorted(set(sources)):
        seen[s] = 1
        order.append(s)
        queue.append(s)
    heads = g.heads
    out_arcs = g.out_arcs
    while queue:
        u = queue.popleft()
        for a in out_arcs[u]:
            if m[a] or a in extra:
                continue
            v = heads[a]
            if not seen[v]:
                seen[v] = 1
                order.append(v)
                queue.append(v)
    return set(order)


def has_path(g: SkewGraph, sources: Iterable[int], targets, mask: bytearray | None = None) -> bool:
    """True iff some target is reachable from some source over undeleted arcs."""
    m = g.deleted if mask is None else mask
    tgt = targets if isinstance(targets, (set, frozenset)) else set(targets)
    seen = bytearray(g.num_vertices)
    queue = deque()
    for s in sources:
        if s in tgt:
            return True
        if not seen[s]:
            seen[s] = 1
            queue.append(s)
    heads = g.heads
    out_arcs = g.out_arcs
    while queue:
        u = queue.popleft()
        for a in out_arcs[u]:
            if m[a]:
                continue
            v = heads[a]
            if not seen[v]:
                if v in tgt:
                    return True
                seen[v] = 1
                queue.append(v)
    return False


def tarjan(succ: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Iterative Tarjan SCC.

    Returns ``(comp, count)`` where ``comp[v]`` is the completion index of v's
    component.  Completion order is a reverse topological order: if a path
    leads from component c1 to a different component c2 then c2 < c1.
    Roots are tried in ascending vertex order, so labels are deterministic.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp, ncomp


def scc_labels(g: SkewGraph, mask: bytearray | None = None) -> list[int]:
    """Strongly-connected-component label per vertex index, honouring the mask."""
    comp, _ = tarjan(g.successors(mask))
    return comp


class Symmetry(NamedTuple):
    regular: bool
    self_conjugate: bool


def set_symmetry(s: Iterable[int]) -> Symmetry:
    """Classify a vertex-index or arc-id set against its conjugate image."""
    items = set(s)
    conj = {x ^ 1 for x in items}
    return Symmetry(regular=items.isdisjoint(conj), self_conjugate=items == conj)


def is_regular(s) -> bool:
    items = s if isinstance(s, (set, frozenset)) else set(s)
    return all((x ^ 1) not in items for x in items)
