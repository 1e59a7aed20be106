from hypothesis import given
from hypothesis import strategies as st
import pytest

from corpus import PROPS, skew_graphs
from skewcut.skew_graph import (
    MalformedInput,
    SkewGraph,
    build,
    conjugate,
    has_path,
    reachable,
    scc_labels,
    set_symmetry,
    vertex_index,
    vertex_label,
)


def V(*vs):
    return {vertex_index(v) for v in vs}


def test_forced_parallel_pair():
    g = build(1, [(1, -1)])
    assert [g.signed_arc(a) for a in range(2)] == [(1, -1), (1, -1)]


def test_conjugate_arc_endpoints():
    g = build(2, [(1, 2)])
    assert g.signed_arc(0) == (1, 2)
    assert g.signed_arc(1) == (-2, -1)


@pytest.mark.parametrize("arc", [(1, 3), (0, 1), (-3, 1)])
def test_out_of_range_endpoint(arc):
    with pytest.raises(MalformedInput):
        build(2, [arc])


def test_conjugate_examples():
    assert vertex_label(conjugate(vertex_index(3))) == -3
    assert conjugate(4) == 5 and conjugate(5) == 4


def test_vertex_index_roundtrip():
    for v in range(-9, 10):
        if v:
            assert vertex_label(vertex_index(v)) == v


def test_reachable_examples():
    g = build(2, [(1, 2), (2, -1)])
    assert reachable(g, []) == set()
    # the conjugate of (2,-1) is (1,-2), so -2 is reached as well
    assert reachable(g, V(1)) == V(1, 2, -1, -2)
    # arc (2,-1) is pair 1 (arc ids 2, 3)
    assert reachable(g, V(1), extra_deleted=[2, 3]) == V(1, 2)


def test_scc_examples():
    g = SkewGraph(1)
    assert len(set(scc_labels(g))) == 2
    g = build(1, [(1, -1), (-1, 1)])
    comp = scc_labels(g)
    assert comp[0] == comp[1]
    g.delete_pair(2)
    comp = scc_labels(g)
    assert comp[0] != comp[1]


def test_set_symmetry_examples():
    assert set_symmetry(V(1, 2)) == (True, False)
    assert set_symmetry(V(1, -1)) == (False, True)
    assert set_symmetry(V(1, -1, 2)) == (False, False)


@PROPS
@given(skew_graphs(), st.data())
def test_involution_and_mask_symmetry(g, data):
    g.check()
    for a in range(g.num_arcs):
        assert conjugate(conjugate(a)) == a != conjugate(a)
    if g.num_arcs:
        a = data.draw(st.integers(0, g.num_arcs - 1))
        g.delete_pair(a)
        g.check()
        g.restore_pair(a ^ 1)
        g.check()


@PROPS
@given(skew_graphs(), st.data())
def test_path_symmetry(g, data):
    u = data.draw(st.integers(0, g.num_vertices - 1))
    v = data.draw(st.integers(0, g.num_vertices - 1))
    assert has_path(g, [u], {v}) == has_path(g, [v ^ 1], {u ^ 1})


@PROPS
@given(skew_graphs(), st.data())
def test_reachable_side_of_symmetric_cut(g, data):
    # after deleting a self-conjugate X that leaves no L-L' path, R(L, X) is
    # regular and its conjugate is exactly the set that reaches L'
    L = [data.draw(st.integers(0, g.num_vertices - 1))]
    chosen = data.draw(st.lists(st.integers(0, max(0, g.num_arcs // 2 - 1)), max_size=6))
    X = {x for p in chosen if g.num_arcs for x in (2 * p, 2 * p + 1)}
    mask = bytearray(g.deleted)
    for a in X:
        mask[a] = 1
    sinks = {v ^ 1 for v in L}
    if has_path(g, L, sinks, mask):
        return
    R = reachable(g, L, mask=mask)
    assert set_symmetry(R).regular
    co = {w for w in range(g.num_vertices) if has_path(g, [w], sinks, mask)}
    assert {v ^ 1 for v in R} == co
