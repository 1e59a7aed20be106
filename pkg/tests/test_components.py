import pytest

from corpus import seeded_graph, seeded_terminals
from skewcut.components import Component, IrregularSeparator, NoComponent, find_lk_component
from skewcut.oracle import bf_lk_components, bf_separator_value, component_properties
from skewcut.separators import ContractViolation
from skewcut.skew_graph import build, has_path, set_symmetry, vertex_index


def component_corpus(count: int):
    seed = 10_000
    while count:
        seed += 1
        g, r = seeded_graph(seed, max_pairs=7, max_arcs=16)
        L = seeded_terminals(g, r)
        if not has_path(g, L, {v ^ 1 for v in L}):
            continue
        count -= 1
        yield g, L, 1 + r.below(3)


CORPUS = list(component_corpus(300))


def test_unique_separator_is_a_conjugate_pair():
    g = build(1, [(1, -1)])
    assert find_lk_component(g, [0], 1) == IrregularSeparator((0, 1), 2)


def test_component_with_regular_layers():
    # the only L-L' route is 1 -> -2 -> 2 -> -1; +3 hangs off 1 and joins Z
    g = build(3, [(-3, -1), (-2, 2), (2, -1)])
    one = vertex_index(1)
    res = find_lk_component(g, [one], 1)
    assert res == Component(frozenset({one, vertex_index(3)}), 1)
    assert g.out_boundary(res.Z) == [5]
    assert bf_lk_components(g, [one], 1) == [res.Z]


def test_budget_one_short():
    g = build(2, [(1, -1), (2, -2), (1, 2)])
    assert bf_separator_value(g, [0]) == 3
    assert find_lk_component(g, [0], 1) == NoComponent()
    assert isinstance(find_lk_component(g, [0], 2), IrregularSeparator)


def test_preconditions():
    g = build(2, [(1, 2)])
    with pytest.raises(ContractViolation):
        find_lk_component(g, [0], 1)  # no L-L' path
    with pytest.raises(ContractViolation):
        find_lk_component(build(1, [(1, -1)]), [0, 1], 1)


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_matches_exhaustive_search(idx):
    g, L, k = CORPUS[idx]
    lam = bf_separator_value(g, L)
    res = find_lk_component(g, L, k)
    if lam > 2 * k:
        assert res == NoComponent()
        return
    assert not isinstance(res, NoComponent)
    assert res.lam == lam
    if isinstance(res, Component):
        assert component_properties(g, L, res.Z, k)
        assert bf_lk_components(g, L, k) == [res.Z]
    else:
        S = res.S
        assert len(S) == lam and not set_symmetry(S).regular
        m = bytearray(g.deleted)
        for a in S:
            m[a] = 1
        # separating with exactly lambda arcs makes S a minimum separator
        assert not has_path(g, L, {v ^ 1 for v in L}, m)


@pytest.mark.parametrize("n, arcs, L, k", [
    (5, [(1, -4), (-1, 1), (1, 2)], [4], 3),
    (5, [(-3, -5), (1, 2), (-4, -3), (-5, 5), (-1, -5)], [-2], 1),
])
def test_recursion_result_is_reachable_from_terminals(n, arcs, L, k):
    # the nested round restarts from Q, which L may reach only through the
    # removed core; the reported component must still hang off L
    g = build(n, arcs)
    L = [vertex_index(v) for v in L]
    res = find_lk_component(g, L, k)
    if isinstance(res, Component):
        assert component_properties(g, L, res.Z, k)
        assert bf_lk_components(g, L, k) == [res.Z]
