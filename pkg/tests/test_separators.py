import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import PROPS, seeded_graph, seeded_terminals, skew_graphs
from skewcut.oracle import BudgetExceeded, bf_min_separators, bf_separator_value
from skewcut.separators import (
    ContractViolation,
    has_min_separator_with_pair,
    min_separator,
    min_separator_with_pair,
    separator_collection,
    separator_value,
)
from skewcut.skew_graph import build, has_path, reachable, vertex_index


def layered_corpus(count: int):
    """Seeded (graph, L, lam, separators) with 1 <= lam <= 4 and <= 10 vertex pairs."""
    seed = 0
    while count:
        seed += 1
        g, r = seeded_graph(seed, max_pairs=10, max_arcs=18)
        L = seeded_terminals(g, r)
        if not has_path(g, L, {v ^ 1 for v in L}):
            continue
        try:
            lam, seps = bf_min_separators(g, L, max_size=4)
        except BudgetExceeded:
            continue
        if lam is None:
            continue
        count -= 1
        yield g, L, lam, seps


CORPUS = list(layered_corpus(100))


def test_disconnected_terminals():
    g = build(2, [(1, 2)])
    res = min_separator(g, [vertex_index(1)], cap=3)
    assert res.lam == 0 and res.cut_arcs == []


def test_forced_parallel_pair_is_cut_twice():
    g = build(1, [(1, -1)])
    res = min_separator(g, [vertex_index(1)], cap=2)
    assert res.lam == 2 and res.cut_arcs == [0, 1]


def test_cap_exceeded():
    g = build(1, [(1, -1), (1, -1)])  # four parallel arcs 1 -> -1
    assert separator_value(g, [0], cap=4) == 4
    assert min_separator(g, [0], cap=3) is None


def test_irregular_terminals_rejected():
    g = build(1, [(1, -1)])
    with pytest.raises(ContractViolation):
        min_separator(g, [0, 1], cap=2)


def test_collection_needs_positive_lambda():
    g = build(2, [(1, 2)])
    with pytest.raises(ContractViolation):
        separator_collection(g, [0], 0)


def test_path_through_one_vertex():
    # 1 -> 2 -> -1; the conjugates add 1 -> -2 -> -1, so lambda is 2
    g = build(2, [(1, 2), (2, -1)])
    coll = separator_collection(g, [vertex_index(1)], 2)
    prefixes = coll.prefixes()
    assert prefixes[0] == {vertex_index(1)}
    assert all(len(cut) == 2 for cut in coll.layer_cuts)
    assert sorted({a for cut in coll.layer_cuts for a in cut}) == [0, 1, 2, 3]


def test_two_disjoint_paths_cover_every_min_cut_arc():
    g = build(3, [(1, 2), (2, -1), (1, 3), (3, -1)])
    lam, seps = bf_min_separators(g, [0])
    coll = separator_collection(g, [0], lam)
    covered = {a for cut in coll.layer_cuts for a in cut}
    assert lam == 4
    assert {a for S in seps for a in S} <= covered


def test_pair_membership_examples():
    g = build(1, [(1, -1)])
    assert has_min_separator_with_pair(g, [0], 0, 2)
    assert min_separator_with_pair(g, [0], 0, 2) == [0, 1]
    g = build(3, [(1, -1), (2, 3)])
    assert not has_min_separator_with_pair(g, [0], 2, 2)


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_layer_properties(idx):
    g, L, lam, seps = CORPUS[idx]
    coll = separator_collection(g, L, lam)
    sinks = {v ^ 1 for v in L}
    prev = set()
    for X, cut in zip(coll.prefixes(), coll.layer_cuts):
        assert prev < X and set(L) <= X and not X & sinks
        inner = bytearray(g.deleted)
        for a in range(g.num_arcs):
            if g.tails[a] not in X or g.heads[a] not in X:
                inner[a] = 1
        assert reachable(g, L, mask=inner) == X
        assert len(cut) == lam == len(g.out_boundary(X))
        prev = X
    covered = {a for cut in coll.layer_cuts for a in cut}
    assert {a for S in seps for a in S} <= covered


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_pair_membership_matches_enumeration(idx):
    g, L, lam, seps = CORPUS[idx]
    for y in range(g.num_arcs):
        want = any(y in S and y ^ 1 in S for S in seps)
        assert has_min_separator_with_pair(g, L, y, lam) == want
        found = min_separator_with_pair(g, L, y, lam)
        assert (found is not None) == want
        if found:
            assert tuple(found) in seps


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_min_separators_close_under_conjugation(idx):
    g, L, lam, seps = CORPUS[idx]
    used = {a for S in seps for a in S}
    assert used == {a ^ 1 for a in used}
    for S in seps:
        closure = set(S) | {a ^ 1 for a in S}
        Z = reachable(g, L, closure)
        assert len(g.out_boundary(Z)) == lam


@PROPS
@given(skew_graphs(max_pairs=6, max_arcs=14), st.data())
def test_flow_value_matches_reference(g, data):
    L = [data.draw(st.integers(0, g.num_vertices - 1))]
    res = min_separator(g, L, cap=2 * g.num_arcs)
    assert res.lam == bf_separator_value(g, L)
    assert res.cut_arcs == g.out_boundary(res.source_side)
    m = bytearray(g.deleted)
    for a in res.cut_arcs:
        m[a] = 1
    assert not has_path(g, L, {L[0] ^ 1}, m)


@PROPS
@given(skew_graphs(max_pairs=6, max_arcs=14), st.data())
def test_crossing_uncrossing(g, data):
    B = set(data.draw(st.lists(st.integers(0, g.num_vertices - 1), unique=True)))
    Bc = {v ^ 1 for v in B}
    out_B = g.out_boundary(B)
    crossing = set(out_B) & set(g.out_boundary(Bc))
    out_Q = g.out_boundary(B - Bc)
    if crossing:
        assert len(out_Q) < len(out_B)
    else:
        assert len(out_Q) == len(out_B)
