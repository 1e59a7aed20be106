"""Exhaustive reference implementations.

Nothing here touches the flow, component or solver code: reachability is
recomputed with bitmask closures and satisfiability with truth tables, so the
routines can serve as independent oracles in tests and from the CLI.  Each
routine refuses inputs beyond its budget rather than running unboundedly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import NamedTuple

from .instances import CnfFormula, UndirectedGraph, is_bipartite
from .skew_graph import SkewGraph


class BudgetExceeded(ValueError):
    """Input too large for an exhaustive routine."""


@dataclass(frozen=True)
class OracleBudget:
    max_arc_pairs: int = 32
    max_multicut_k: int = 4
    max_vars: int = 20
    max_clauses: int = 16
    max_a2sat_k: int = 4
    max_graph_vertices: int = 12
    max_qhorn_vars: int = 10
    max_backdoor_vars: int = 10
    max_backdoor_k: int = 3
    max_separator_arcs: int = 30
    max_component_pairs: int = 10


BUDGET = OracleBudget()


class BruteResult(NamedTuple):
    feasible: bool
    witness: tuple | None


def _refuse(cond: bool, what: str) -> None:
    if cond:
        raise BudgetExceeded(what)


def _adjacency_bits(nv: int, arcs) -> list[int]:
    adj = [0] * nv
    for t, h in arcs:
        adj[t] |= 1 << h
    return adj


def _reach_bits(adj: list[int], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def _splits(adj: list[int], family) -> bool:
    memo: dict[int, int] = {}

    def reach(v):
        r = memo.get(v)
        if r is None:
            r = memo[v] = _reach_bits(adj, v)
        return r

    for J in family:
        if not any(not ((reach(v) >> (v ^ 1)) & 1 and (reach(v ^ 1) >> v) & 1) for v in J):
            return False
    return True


def bf_multicut(g: SkewGraph, family, k: int, mask: bytearray | None = None) -> BruteResult:
    """Smallest set of at most k undeleted conjugate arc pairs splitting every family set."""
    m = g.deleted if mask is None else mask
    pairs = [a for a in range(0, g.num_arcs, 2) if not m[a]]
    _refuse(len(pairs) > BUDGET.max_arc_pairs or k > BUDGET.max_multicut_k, "bf_multicut budget")
    nv = g.num_vertices
    family = [tuple(J) for J in family]
    for size in range(0, min(k, len(pairs)) + 1):
        for chosen in combinations(pairs, size):
            gone = set(chosen)
            arcs = [(g.tails[a], g.heads[a]) for a in range(g.num_arcs)
                    if not m[a] and (a & ~1) not in gone]
            if _splits(_adjacency_bits(nv, arcs), family):
                witness = tuple(sorted(x for a in chosen for x in (a, a + 1)))
                return BruteResult(True, witness)
    return BruteResult(False, None)


def bf_reach_set(g: SkewGraph, sources, mask: bytearray | None = None, removed=()) -> set[int]:
    m = g.deleted if mask is None else mask
    gone = set(removed)
    arcs = [(g.tails[a], g.heads[a]) for a in range(g.num_arcs) if not m[a] and a not in gone]
    adj = _adjacency_bits(g.num_vertices, arcs)
    bits = 0
    for s in sources:
        bits |= _reach_bits(adj, s)
    return {v for v in range(g.num_vertices) if bits >> v & 1}


def bf_min_separators(g: SkewGraph, L, mask: bytearray | None = None, max_size: int = 4):
    """(lambda, all minimum L-L' separators) by enumerating arc subsets.

    Only arcs lying on some L-L' walk can belong to a minimum separator, so the
    enumeration is restricted to those.  Returns ``(None, [])`` when lambda
    exceeds ``max_size``.
    """
    m = g.deleted if mask is None else mask
    L = sorted(set(L))
    sinks = {v ^ 1 for v in L}
    nv = g.num_vertices
    alive = [a for a in range(g.num_arcs) if not m[a]]
    fwd = bf_reach_set(g, L, m)
    rev_adj = _adjacency_bits(nv, [(g.heads[a], g.tails[a]) for a in alive])
    back = 0
    for t in sinks:
        back |= _reach_bits(rev_adj, t)
    useful = [a for a in alive if g.tails[a] in fwd and back >> g.heads[a] & 1]
    _refuse(len(useful) > BUDGET.max_separator_arcs, "bf_min_separators budget")
    sink_bits = sum(1 << t for t in sinks)

    def separates(removed):
        arcs = [(g.tails[a], g.heads[a]) for a in alive if a not in removed]
        adj = _adjacency_bits(nv, arcs)
        for s in L:
            if _reach_bits(adj, s) & sink_bits:
                return False
        return True

    for size in range(0, max_size + 1):
        found = [c for c in combinations(useful, size) if separates(set(c))]
        if found:
            return size, found
    return None, []


def _flow_value(nv: int, arcs, sources, sinks) -> int:
    """Plain DFS augmenting-path max flow with unit arc capacities."""
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, set[int]] = {v: set() for v in range(nv + 2)}
    s, t = nv, nv + 1
    big = len(arcs) + 1

    def add(u, v, c):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)
        adj[u].add(v)
        adj[v].add(u)

    for u, v in arcs:
        add(u, v, 1)
    for x in sources:
        add(s, x, big)
    for x in sinks:
        add(x, t, big)
    value = 0
    while True:
        parent = {s: None}
        stack = [s]
        while stack and t not in parent:
            u = stack.pop()
            for w in sorted(adj[u]):
                if w not in parent and cap[(u, w)] > 0:
                    parent[w] = u
                    stack.append(w)
        if t not in parent:
            return value
        w = t
        while parent[w] is not None:
            u = parent[w]
            cap[(u, w)] -= 1
            cap[(w, u)] += 1
            w = u
        value += 1


def bf_separator_value(g: SkewGraph, L, mask: bytearray | None = None) -> int:
    m = g.deleted if mask is None else mask
    arcs = [(g.tails[a], g.heads[a]) for a in range(g.num_arcs) if not m[a]]
    L = set(L)
    return _flow_value(g.num_vertices, arcs, L, {v ^ 1 for v in L})


def component_properties(g: SkewGraph, L, Z, k: int, mask: bytearray | None = None) -> bool:
    """Properties 1-4 of an (L,k)-component, checked from scratch."""
    m = g.deleted if mask is None else mask
    L, Z = set(L), set(Z)
    if not L <= Z or any(v ^ 1 in Z for v in Z):
        return False
    inner = [(g.tails[a], g.heads[a]) for a in range(g.num_arcs)
             if not m[a] and g.tails[a] in Z and g.heads[a] in Z]
    adj = _adjacency_bits(g.num_vertices, inner)
    bits = 0
    for s in L:
        bits |= _reach_bits(adj, s)
    if any(not bits >> v & 1 for v in Z):
        return False
    lam_L = bf_separator_value(g, L, m)
    return lam_L <= 2 * k and bf_separator_value(g, Z, m) == lam_L


def bf_lk_components(g: SkewGraph, L, k: int, mask: bytearray | None = None) -> list[frozenset]:
    """All inclusion-maximal (L,k)-components by enumerating regular supersets of L."""
    m = g.deleted if mask is None else mask
    _refuse(g.n_pairs > BUDGET.max_component_pairs, "bf_lk_components budget")
    L = set(L)
    free = [p for p in range(g.n_pairs) if 2 * p not in L and 2 * p + 1 not in L
            and 2 * p not in {v ^ 1 for v in L} and 2 * p + 1 not in {v ^ 1 for v in L}]
    good = []
    for choice in product((None, 0, 1), repeat=len(free)):
        Z = set(L)
        for p, c in zip(free, choice):
            if c is not None:
                Z.add(2 * p + c)
        if component_properties(g, L, Z, k, m):
            good.append(frozenset(Z))
    return [Z for Z in good if not any(Z < W for W in good)]


def _violation_masks(f: CnfFormula) -> list[int]:
    """For every assignment, the bitmask of clauses it falsifies."""
    n = f.n_vars
    masks = []
    for bits in range(1 << n):
        vm = 0
        for ci, c in enumerate(f.clauses):
            if not any((bits >> (abs(lit) - 1) & 1) == (lit > 0) for lit in c):
                vm |= 1 << ci
        masks.append(vm)
    return masks


def bf_satisfiable(f: CnfFormula) -> bool:
    _refuse(f.n_vars > BUDGET.max_vars, "bf_satisfiable budget")
    return any(vm == 0 for vm in _violation_masks(f))


def bf_almost2sat(f: CnfFormula, k: int) -> BruteResult:
    """Smallest clause-index set (at most k) whose removal leaves F satisfiable."""
    _refuse(f.n_vars > BUDGET.max_vars or len(f.clauses) > BUDGET.max_clauses
            or k > BUDGET.max_a2sat_k, "bf_almost2sat budget")
    masks = set(_violation_masks(f))
    for size in range(0, min(k, len(f.clauses)) + 1):
        for chosen in combinations(range(len(f.clauses)), size):
            sel = sum(1 << i for i in chosen)
            if any(vm & ~sel == 0 for vm in masks):
                return BruteResult(True, chosen)
    return BruteResult(False, None)


def bf_bipartization(g: UndirectedGraph, k: int, mode: str = "vertex") -> BruteResult:
    """Smallest vertex (or edge-index) set of size at most k leaving g bipartite."""
    _refuse(g.n > BUDGET.max_graph_vertices, "bf_bipartization budget")
    if mode == "vertex":
        items = range(1, g.n + 1)
    elif mode == "edge":
        items = range(len(g.edges))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for size in range(0, k + 1):
        for chosen in combinations(items, size):
            if mode == "vertex":
                ok = is_bipartite(g.n, g.edges, removed_vertices=chosen)
            else:
                ok = is_bipartite(g.n, g.edges, removed_edges=chosen)
            if ok:
                return BruteResult(True, chosen)
    return BruteResult(False, None)


def bf_qhorn(f: CnfFormula) -> bool:
    """q-Horn test by enumerating certifying weights in {0, 1/2, 1} (stored doubled)."""
    vs = sorted(f.variables())
    _refuse(len(vs) > BUDGET.max_qhorn_vars, "bf_qhorn budget")
    pos = {v: i for i, v in enumerate(vs)}
    clauses = [tuple(set(c)) for c in f.clauses]
    for weights in product((0, 1, 2), repeat=len(vs)):
        ok = True
        for c in clauses:
            total = 0
            for lit in c:
                w = weights[pos[abs(lit)]]
                total += w if lit > 0 else 2 - w
            if total > 2:
                ok = False
                break
        if ok:
            return True
    return False


def bf_qhorn_backdoor(f: CnfFormula, k: int) -> BruteResult:
    """Smallest variable set (at most k) whose deletion leaves a q-Horn formula."""
    vs = sorted(f.variables())
    _refuse(len(vs) > BUDGET.max_backdoor_vars or k > BUDGET.max_backdoor_k, "bf_qhorn_backdoor budget")
    for size in range(0, min(k, len(vs)) + 1):
        for chosen in combinations(vs, size):
            if bf_qhorn(f.without_variables(chosen)):
                return BruteResult(True, chosen)
    return BruteResult(False, None)
