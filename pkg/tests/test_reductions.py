from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import PROPS
from skewcut.instances import CnfFormula, UndirectedGraph, is_bipartite
from skewcut.oracle import bf_almost2sat, bf_bipartization, bf_qhorn, bf_qhorn_backdoor, bf_satisfiable
from skewcut.reductions import (
    almost_2sat,
    edge_bipartization,
    implication_graph,
    is_qhorn,
    oct,
    qhorn_backdoor,
    qhorn_gadget,
    quadratic_cover,
    smallest,
    two_sat_satisfiable,
)
from skewcut.skew_graph import MalformedInput, scc_labels, vertex_index

F_NQ = CnfFormula(3, [(1, 2, 3), (-1, -2), (-2, -3), (-1, -3), (1, 2), (2, 3), (1, 3)])


def cycle(n):
    return UndirectedGraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete(n):
    return UndirectedGraph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def arcs_of(g, mask=None):
    m = g.deleted if mask is None else mask
    return Counter(g.signed_arc(a) for a in range(g.num_arcs) if not m[a])


@st.composite
def formulas(draw, max_vars=6, max_clauses=9, max_width=2):
    n = draw(st.integers(1, max_vars))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=1, max_size=max_width).map(tuple), max_size=max_clauses))
    return CnfFormula(n, clauses)


@st.composite
def graphs(draw, max_n=7, max_m=11):
    n = draw(st.integers(2, max_n))
    edge = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda e: e[0] != e[1])
    return UndirectedGraph(n, draw(st.lists(edge, max_size=max_m)))


# -- implication graphs


def test_implication_graph_of_one_clause():
    g, _ = implication_graph(CnfFormula(2, [(1, 2)]))
    assert arcs_of(g) == Counter({(-1, 2): 1, (-2, 1): 1})


def test_unit_clauses_are_doubled_literals():
    g, _ = implication_graph(CnfFormula(1, [(1,), (-1,)]))
    assert arcs_of(g) == Counter({(-1, 1): 2, (1, -1): 2})
    comp = scc_labels(g)
    assert comp[0] == comp[1]


def test_empty_formula():
    g, _ = implication_graph(CnfFormula(3, []))
    assert g.num_arcs == 0


def test_wide_clause_rejected():
    with pytest.raises(MalformedInput):
        implication_graph(CnfFormula(3, [(1, 2, 3)]))


def test_two_sat_examples():
    assert two_sat_satisfiable(CnfFormula(2, [(1, 2)]))
    assert not two_sat_satisfiable(CnfFormula(1, [(1,), (-1,)]))


@PROPS
@given(formulas(max_vars=10, max_clauses=14))
def test_two_sat_matches_truth_tables(f):
    assert two_sat_satisfiable(f) == bf_satisfiable(f)


@PROPS
@given(formulas(), st.data())
def test_deleting_clauses_commutes_with_building(f, data):
    C = data.draw(st.sets(st.integers(0, max(0, len(f.clauses) - 1)))) if f.clauses else set()
    g, _ = implication_graph(f)
    mask = bytearray(g.deleted)
    for c in C:
        mask[2 * c] = mask[2 * c + 1] = 1
    h, _ = implication_graph(f.without_clauses(C))
    assert arcs_of(g, mask) == arcs_of(h)


# -- Almost 2-SAT


def test_almost_2sat_examples():
    assert almost_2sat(CnfFormula(2, [(1, 2)]), 0) == []
    assert almost_2sat(CnfFormula(1, [(1,), (-1,)]), 1) in ([0], [1])
    full = CnfFormula(2, [(1, 2), (1, -2), (-1, 2), (-1, -2)])
    sol = almost_2sat(full, 1)
    assert len(sol) == 1 and two_sat_satisfiable(full.without_clauses(sol))
    assert almost_2sat(full, 0) is None
    assert bf_almost2sat(full, 0).feasible is False


@PROPS
@given(formulas(max_vars=5, max_clauses=9), st.integers(0, 3))
def test_almost_2sat_matches_brute_force(f, k):
    sol = almost_2sat(f, k)
    ref = bf_almost2sat(f, k)
    assert (sol is not None) == ref.feasible
    if sol is not None:
        assert len(sol) <= k and two_sat_satisfiable(f.without_clauses(sol))
        assert len(smallest(almost_2sat, f, k)) == len(ref.witness)


# -- bipartization


def test_edge_bipartization_examples():
    sol = edge_bipartization(cycle(5), 3)
    assert sol is not None and is_bipartite(5, cycle(5).edges, removed_edges=sol)
    assert smallest(edge_bipartization, cycle(5), 3) and len(smallest(edge_bipartization, cycle(5), 3)) == 1
    assert edge_bipartization(cycle(4), 0) == []
    assert len(edge_bipartization(complete(4), 2)) == 2
    assert edge_bipartization(complete(4), 1) is None


def test_oct_examples():
    assert len(smallest(oct, cycle(3), 3)) == 1
    assert oct(cycle(6), 0) == []
    assert len(smallest(oct, complete(4), 3)) == 2
    assert oct(complete(4), 1) is None
    assert len(smallest(oct, cycle(5), 3)) == 1


def test_self_loops_rejected():
    with pytest.raises(MalformedInput):
        UndirectedGraph(2, [(1, 1)])


@PROPS
@given(graphs(), st.integers(0, 3))
def test_bipartization_matches_brute_force(g, k):
    for fn, mode, key in ((oct, "vertex", "removed_vertices"), (edge_bipartization, "edge", "removed_edges")):
        sol = fn(g, k)
        ref = bf_bipartization(g, k, mode)
        assert (sol is not None) == ref.feasible
        if sol is not None:
            assert len(sol) <= k and is_bipartite(g.n, g.edges, **{key: sol})
            assert len(smallest(fn, g, k)) == len(ref.witness)


# -- q-Horn


def test_quadratic_cover_of_one_clause():
    cover = quadratic_cover(CnfFormula(3, [(3, 1, 2)]))
    assert cover.fresh == [[4, 5]]
    assert cover.formula.clauses == [(1, 4), (-4, 2), (2, 5), (-5, 3), (-4, 5)]


def test_quadratic_cover_of_binary_clauses():
    f = CnfFormula(3, [(1, 2), (-2, 3), (1,)])
    cover = quadratic_cover(f)
    assert [len(ys) for ys in cover.fresh] == [1, 1, 0]
    assert cover.formula.n_vars == 5


@PROPS
@given(formulas(max_vars=8, max_clauses=10, max_width=6))
def test_quadratic_cover_is_linear(f):
    cover = quadratic_cover(f)
    assert cover.formula.width <= 2
    assert cover.formula.length <= 6 * f.length


def test_is_qhorn_examples():
    horn = CnfFormula(4, [(-1, -2, 3), (-3, -4, 1), (2,), (-1, -4, -3, -2)])
    assert is_qhorn(horn) and bf_qhorn(horn)
    assert is_qhorn(CnfFormula(3, [(1, 2), (-2, 3), (-1, -3)]))
    assert not is_qhorn(F_NQ) and not bf_qhorn(F_NQ)


@PROPS
@given(formulas(max_vars=6, max_clauses=7, max_width=4))
def test_is_qhorn_matches_weight_enumeration(f):
    assert is_qhorn(f) == bf_qhorn(f)


def test_gadget_on_horn_input():
    horn = CnfFormula(3, [(-1, -2, 3), (-3, 1), (-1, -2, -3)])
    g, _, oracle = qhorn_gadget(horn, 1)
    g.check()
    assert oracle.find_violated(g) is None


def test_gadget_on_non_qhorn_input():
    g, lmap, oracle = qhorn_gadget(F_NQ, 1)
    g.check()
    assert oracle.find_violated(g) == tuple(lmap.vertex(v) for v in (1, 2, 3))
    internal = [x for a in lmap.internal.values() for x in (a, a ^ 1)]
    assert len(internal) == 2 * len(F_NQ.variables())


def test_gadget_internal_arcs_link_split_copies():
    g, lmap, _ = qhorn_gadget(F_NQ, 2)
    for v, a in lmap.internal.items():
        assert g.arc(a) == lmap.split[v]
        assert g.arc(a ^ 1) == lmap.split[-v]
        assert lmap.split[v][0] ^ 1 == lmap.split[-v][1]


def test_qhorn_backdoor_examples():
    assert qhorn_backdoor(CnfFormula(3, [(1, 2), (-1, 3)]), 0) == []
    sol = qhorn_backdoor(F_NQ, 1)
    assert sol in ([1], [2], [3]) and is_qhorn(F_NQ.without_variables(sol))
    assert qhorn_backdoor(F_NQ, 0) is None


@PROPS
@given(formulas(max_vars=5, max_clauses=6, max_width=4), st.integers(0, 2))
def test_qhorn_backdoor_matches_brute_force(f, k):
    sol = qhorn_backdoor(f, k)
    ref = bf_qhorn_backdoor(f, k)
    assert (sol is not None) == ref.feasible
    if sol is not None:
        assert len(sol) <= k and is_qhorn(f.without_variables(sol))
