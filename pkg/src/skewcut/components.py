"""The (L,k)-component procedure.

Given a regular terminal set L with an L-L' path, either conclude that the
minimum L-L' separator exceeds the budget, return a maximal regular set Z
around L whose own minimum Z-Z' separator has the same size, or return a
minimum L-L' separator that contains some arc together with its conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .separators import (
    ContractViolation,
    InternalInvariantError,
    collection_from_flow,
    has_min_separator_with_pair,
    max_flow,
    min_separator_with_pair,
)
from .skew_graph import SkewGraph, has_path, is_regular, reachable


@dataclass(frozen=True)
class NoComponent:
    pass


@dataclass(frozen=True)
class Component:
    Z: frozenset
    lam: int


@dataclass(frozen=True)
class IrregularSeparator:
    S: tuple
    lam: int


ComponentOutcome = NoComponent | Component | IrregularSeparator


def _pair_separator(g, terms, lam, arcs, mask):
    for y in arcs:
        if has_min_separator_with_pair(g, terms, y, lam, mask):
            sep = min_separator_with_pair(g, terms, y, lam, mask)
            if sep is None:
                raise InternalInvariantError("pair test and pair separator disagree")
            return sep
    return None


def find_lk_component(
    g: SkewGraph, L, k: int, mask: bytearray | None = None, *, cap: int | None = None
) -> ComponentOutcome:
    """Run the component procedure with separator budget ``2k`` (or ``cap``).

    Each round builds the layered collection of minimum separators.  When
    every layer is regular the last one is the component.  Otherwise, with A
    the last regular layer and B the first irregular one (B is replaced by
    K = B \\ A' when A meets B'), the search continues from Q = B \\ B' in the
    graph with every arc touching B ∩ B' removed.  The arcs Q° from Q into
    B ∩ B' are carried along and re-added to any separator found deeper down.
    """
    base_mask = g.deleted if mask is None else mask
    terms = sorted(set(L))
    if not terms or not is_regular(terms):
        raise ContractViolation("L must be a nonempty regular set")
    if cap is None:
        if k < 0:
            raise ContractViolation("k must be nonnegative")
        cap = 2 * k
    sinks = {v ^ 1 for v in terms}
    if not has_path(g, terms, sinks, base_mask):
        raise ContractViolation("find_lk_component requires an L-L' path")

    cur_mask = base_mask
    cur_terms = terms
    cur_cap = cap
    lifted: list[int] = []
    lam0 = None
    depth = 0
    while True:
        st, exceeded = max_flow(g, cur_terms, cur_cap, cur_mask)
        if exceeded:
            if depth == 0:
                return NoComponent()
            raise InternalInvariantError("separator budget exceeded inside a recursion")
        lam = st.value
        if lam0 is None:
            lam0 = lam
        if lam == 0:
            return _component(g, terms, reachable(g, cur_terms, mask=cur_mask), lam0, base_mask)

        coll = collection_from_flow(st)
        prefixes = coll.prefixes()
        a = 0
        while a < len(prefixes) and is_regular(prefixes[a]):
            a += 1
        if a == len(prefixes):
            return _component(g, terms, prefixes[-1], lam0, base_mask)
        if a == 0:
            raise InternalInvariantError("first layer of the collection is irregular")
        A, B = prefixes[a - 1], prefixes[a]

        def irregular(S):
            S = sorted(set(S) | set(lifted))
            _check_irregular(g, terms, S, lam0, base_mask)
            return IrregularSeparator(tuple(S), lam0)

        A_conj = {v ^ 1 for v in A}
        if not A.isdisjoint({v ^ 1 for v in B}):
            if all((v ^ 1) in B for v in A):
                raise InternalInvariantError("A is contained in B ∩ B'")
            K = B - A_conj
            K_out = g.out_boundary(K, cur_mask)
            if len(K_out) != lam:
                raise InternalInvariantError("boundary of K is not a minimum separator")
            if is_regular(K):
                K_conj = {v ^ 1 for v in K}
                if any(g.heads[x] in K_conj for x in K_out):
                    return irregular(K_out)
                sep = _pair_separator(g, cur_terms, lam, K_out, cur_mask)
                if sep is not None:
                    return irregular(sep)
                raise InternalInvariantError("regular K without a conjugate pair in a minimum separator")
            B = K

        B_conj = {v ^ 1 for v in B}
        Q = B - B_conj
        core = B & B_conj
        Q_conj = {v ^ 1 for v in Q}
        Q_out = g.out_boundary(Q, cur_mask)
        if len(Q_out) != lam:
            raise InternalInvariantError("uncrossed set is not a minimum separator")
        if any(g.heads[x] in Q_conj for x in Q_out):
            return irregular(Q_out)
        Q_in = [x for x in Q_out if g.heads[x] in core]
        if not Q_in:
            raise InternalInvariantError("no arcs from Q into B ∩ B'")
        sep = _pair_separator(g, cur_terms, lam, Q_in, cur_mask)
        if sep is not None:
            return irregular(sep)

        lifted.extend(Q_in)
        nxt = bytearray(cur_mask)
        for v in core:
            for x in g.out_arcs[v]:
                nxt[x] = nxt[x ^ 1] = 1
            for x in g.in_arcs[v]:
                nxt[x] = nxt[x ^ 1] = 1
        cur_mask = nxt
        cur_terms = sorted(Q)
        cur_cap -= len(Q_in)
        depth += 1


def _component(g, terms, Z, lam, mask) -> Component | IrregularSeparator:
    # After a recursion step Z grows from Q rather than L, so parts of it may
    # hang off L only through the removed core.  Keep what L reaches inside Z;
    # no arc leaves that part into the rest of Z, so its boundary is unchanged.
    inner = bytearray(mask)
    for a in range(g.num_arcs):
        if g.tails[a] not in Z or g.heads[a] not in Z:
            inner[a] = 1
    Z = reachable(g, terms, mask=inner)
    out = g.out_boundary(Z, mask)
    if len(out) != lam:
        raise InternalInvariantError("component boundary is not a minimum separator")
    out_set = set(out)
    if any(a ^ 1 in out_set for a in out):
        return IrregularSeparator(tuple(out), lam)
    return Component(frozenset(Z), lam)


def _check_irregular(g, terms, S, lam, mask) -> None:
    if len(S) != lam:
        raise InternalInvariantError(f"lifted separator has {len(S)} arcs, expected {lam}")
    if is_regular(S):
        raise InternalInvariantError("reported separator is regular")
    m = bytearray(mask)
    for a in S:
        m[a] = 1
    if has_path(g, terms, {v ^ 1 for v in terms}, m):
        raise InternalInvariantError("reported separator does not separate L from L'")
