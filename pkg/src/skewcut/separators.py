"""Unit-capacity flows and minimum L-L' separators in skew graphs.

The terminal side ``L`` is a regular set of vertex indices and the sink side
is its conjugate image.  Instead of materialising a super-source with
``cap + 1`` parallel arcs into every terminal (and likewise into a
super-sink), augmenting paths are searched from all of ``L`` at once and
stop at the first vertex of ``L'``; the gadget arcs can never saturate
within ``cap + 1`` augmentations, so the two views coincide.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .skew_graph import SkewGraph, is_regular, reachable, tarjan


class ContractViolation(ValueError):
    """A documented precondition of an operation does not hold."""


class InternalInvariantError(AssertionError):
    """A property guaranteed by the underlying theory failed to hold."""


@dataclass
class SeparatorResult:
    lam: int
    cut_arcs: list[int]
    source_side: set[int]


@dataclass
class LayeredCollection:
    """Nested sets X_1 ⊂ ... ⊂ X_q stored as their successive differences."""

    lam: int
    layer_diffs: list[list[int]]
    layer_cuts: list[list[int]] = field(default_factory=list)

    def prefixes(self) -> list[set[int]]:
        acc: set[int] = set()
        out = []
        for diff in self.layer_diffs:
            acc = acc | set(diff)
            out.append(acc)
        return out

    def __len__(self) -> int:
        return len(self.layer_diffs)


class FlowState:
    """Residual bookkeeping for an L-L' unit flow under a fixed mask."""

    def __init__(self, g: SkewGraph, L: Iterable[int], mask: bytearray | None = None):
        self.g = g
        self.mask = g.deleted if mask is None else mask
        self.L = sorted(set(L))
        self.flow = bytearray(g.num_arcs)
        nv = g.num_vertices
        self.is_source = bytearray(nv)
        self.is_sink = bytearray(nv)
        for v in self.L:
            self.is_source[v] = 1
            self.is_sink[v ^ 1] = 1
        # flow units leaving the super-source into each terminal / entering the super-sink
        self.start_count = [0] * nv
        self.end_count = [0] * nv
        self.value = 0

    def augment(self) -> bool:
        """Find one shortest augmenting path and push a unit along it."""
        g, m, flow = self.g, self.mask, self.flow
        heads, tails = g.heads, g.tails
        out_arcs, in_arcs = g.out_arcs, g.in_arcs
        is_sink = self.is_sink
        nv = g.num_vertices
        parent = [-1] * nv
        seen = bytearray(nv)
        queue = deque()
        for s in self.L:
            seen[s] = 1
            queue.append(s)
        end = -1
        while queue and end < 0:
            u = queue.popleft()
            for a in out_arcs[u]:
                if m[a] or flow[a]:
                    continue
                v = heads[a]
                if seen[v]:
                    continue
                seen[v] = 1
                parent[v] = a << 1
                if is_sink[v]:
                    end = v
                    break
                queue.append(v)
            if end >= 0:
                break
            for a in in_arcs[u]:
                if m[a] or not flow[a]:
                    continue
                v = tails[a]
                if seen[v]:
                    continue
                seen[v] = 1
                parent[v] = (a << 1) | 1
                if is_sink[v]:
                    end = v
                    break
                queue.append(v)
        if end < 0:
            return False
        self.end_count[end] += 1
        v = end
        while parent[v] >= 0:
            p = parent[v]
            a = p >> 1
            if p & 1:
                flow[a] = 0
                v = heads[a]
            else:
                flow[a] = 1
                v = tails[a]
        self.start_count[v] += 1
        self.value += 1
        return True

    def run(self, cap: int) -> bool:
        """Augment until maximum or until ``cap + 1`` units flow; True if exceeded."""
        while self.value <= cap:
            if not self.augment():
                return False
        return True

    def residual_reachable(self) -> bytearray:
        g, m, flow = self.g, self.mask, self.flow
        heads, tails = g.heads, g.tails
        seen = bytearray(g.num_vertices)
        queue = deque()
        for s in self.L:
            seen[s] = 1
            queue.append(s)
        while queue:
            u = queue.popleft()
            for a in g.out_arcs[u]:
                if not m[a] and not flow[a] and not seen[heads[a]]:
                    seen[heads[a]] = 1
                    queue.append(heads[a])
            for a in g.in_arcs[u]:
                if not m[a] and flow[a] and not seen[tails[a]]:
                    seen[tails[a]] = 1
                    queue.append(tails[a])
        return seen

    def min_cut(self) -> SeparatorResult:
        g, m = self.g, self.mask
        side = self.residual_reachable()
        cut = sorted(
            a for v in range(g.num_vertices) if side[v]
            for a in g.out_arcs[v] if not m[a] and not side[g.heads[a]]
        )
        if len(cut) != self.value:
            raise InternalInvariantError("cut size differs from flow value")
        source_side = reachable(g, self.L, cut, mask=m)
        return SeparatorResult(self.value, g.out_boundary(source_side, m), source_side)


def _check_terminals(L) -> list[int]:
    terms = sorted(set(L))
    if not terms:
        raise ContractViolation("terminal set L must be nonempty")
    if not is_regular(terms):
        raise ContractViolation("terminal set L must be regular")
    return terms


def max_flow(g: SkewGraph, L: Iterable[int], cap: int, mask: bytearray | None = None) -> tuple[FlowState, bool]:
    """Run at most ``cap + 1`` augmentations; return the state and an exceeded flag."""
    terms = _check_terminals(L)
    if cap < 0:
        raise ContractViolation("cap must be nonnegative")
    st = FlowState(g, terms, mask)
    return st, st.run(cap)


def min_separator(g: SkewGraph, L: Iterable[int], cap: int, mask: bytearray | None = None) -> SeparatorResult | None:
    """Minimum L-L' separator of size at most ``cap``, or None when it is larger."""
    st, exceeded = max_flow(g, L, cap, mask)
    if exceeded:
        return None
    return st.min_cut()


def separator_value(g: SkewGraph, L: Iterable[int], cap: int, mask: bytearray | None = None) -> int | None:
    st, exceeded = max_flow(g, L, cap, mask)
    return None if exceeded else st.value


def collection_from_flow(st: FlowState) -> LayeredCollection:
    """Layered family of minimum separators from a maximum flow.

    Components of the residual graph (terminals joined to a super-source s and
    conjugates to a super-sink t) are numbered topologically, alpha(v).  For
    each threshold i from alpha(s) down to alpha(t)+1 the set R(Y_i) is the
    part of {v : alpha(v) >= i} reachable from L inside itself.  One BFS grows
    these sets incrementally; vertices met across a threshold wait in the
    forbidden queue until i drops to their index.
    """
    lam = st.value
    if lam <= 0:
        raise ContractViolation("collection requires a positive separator value")
    g, m, flow = st.g, st.mask, st.flow
    nv = g.num_vertices
    s_node, t_node = nv, nv + 1
    heads, tails = g.heads, g.tails
    succ: list[list[int]] = [[] for _ in range(nv + 2)]
    for a in range(g.num_arcs):
        if m[a]:
            continue
        if flow[a]:
            succ[heads[a]].append(tails[a])
        else:
            succ[tails[a]].append(heads[a])
    for v in st.L:
        succ[s_node].append(v)
        if st.start_count[v]:
            succ[v].append(s_node)
        w = v ^ 1
        succ[w].append(t_node)
        if st.end_count[w]:
            succ[t_node].append(w)
    comp, ncomp = tarjan(succ)
    alpha = [ncomp - 1 - c for c in comp]
    a_s, a_t = alpha[s_node], alpha[t_node]
    if not a_t < a_s:
        raise InternalInvariantError("no t-s path in the residual graph")

    in_tree = bytearray(nv)
    in_forbidden = bytearray(nv)
    forbidden: list[int] = []
    queue = deque()
    for v in st.L:
        in_tree[v] = 1
        queue.append(v)
    diffs: list[list[int]] = []
    current = list(st.L)
    i = a_s
    out_arcs = g.out_arcs
    while True:
        while queue:
            u = queue.popleft()
            for a in out_arcs[u]:
                if m[a]:
                    continue
                v = heads[a]
                if in_tree[v]:
                    continue
                if alpha[v] < i:
                    if not in_forbidden[v]:
                        in_forbidden[v] = 1
                        forbidden.append(v)
                    continue
                in_tree[v] = 1
                current.append(v)
                queue.append(v)
        if current:
            diffs.append(sorted(current))
            current = []
        # jump straight to the next threshold that releases a waiting vertex
        nxt = max((alpha[v] for v in forbidden), default=a_t)
        if nxt <= a_t:
            break
        i = nxt
        keep = []
        for v in forbidden:
            if alpha[v] >= i:
                in_forbidden[v] = 0
                in_tree[v] = 1
                current.append(v)
                queue.append(v)
            else:
                keep.append(v)
        forbidden = keep

    coll = LayeredCollection(lam, diffs)
    for prefix in coll.prefixes():
        cut = g.out_boundary(prefix, m)
        if len(cut) != lam:
            raise InternalInvariantError(f"layer boundary has {len(cut)} arcs, expected {lam}")
        coll.layer_cuts.append(cut)
    return coll


def separator_collection(g: SkewGraph, L: Iterable[int], lam: int, mask: bytearray | None = None) -> LayeredCollection:
    """Layered collection for a known positive separator value ``lam``."""
    if lam <= 0:
        raise ContractViolation("collection requires lambda > 0")
    st, exceeded = max_flow(g, L, lam, mask)
    if exceeded or st.value != lam:
        raise InternalInvariantError(f"separator value mismatch: expected {lam}")
    return collection_from_flow(st)


def has_min_separator_with_pair(
    g: SkewGraph, L: Iterable[int], y: int, lam: int, mask: bytearray | None = None
) -> bool:
    """True iff some minimum L-L' separator contains both ``y`` and its conjugate."""
    m = g.deleted if mask is None else mask
    if lam < 2 or m[y]:
        return False
    m2 = bytearray(m)
    m2[y] = m2[y ^ 1] = 1
    st, exceeded = max_flow(g, L, lam - 2, m2)
    return not exceeded


def min_separator_with_pair(
    g: SkewGraph, L: Iterable[int], y: int, lam: int, mask: bytearray | None = None
) -> list[int] | None:
    """A minimum L-L' separator containing ``y`` and ``y ^ 1``, if one exists."""
    m = g.deleted if mask is None else mask
    if lam < 2 or m[y]:
        return None
    m2 = bytearray(m)
    m2[y] = m2[y ^ 1] = 1
    res = min_separator(g, L, lam - 2, m2)
    if res is None:
        return None
    return sorted(res.cut_arcs + [y, y ^ 1])
