"""Problem front-ends that reduce to skew-symmetric multicut.

Literal ``+i`` / ``-i`` of a formula is vertex ``+i`` / ``-i`` of its
implication graph, and clause ``c`` owns the conjugate arc pair
``(2c, 2c + 1)``.  Gadgets that must turn literals (or graph vertices) into
deletable arcs split every literal vertex into an in/out pair joined by an
internal arc; all other arcs are replicated ``k + 1`` times so that no
solution within budget can afford them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .instances import CnfFormula, UndirectedGraph, is_bipartite
from .separators import InternalInvariantError
from .skew_graph import MalformedInput, SkewGraph, scc_labels, vertex_index
from .solver import ExplicitOracle, SolveResult, solve


def _literal_vertex(lit: int) -> int:
    return vertex_index(lit)


# -- implication graphs ------------------------------------------------------


@dataclass
class LiteralMap:
    """Where each literal lives in a built graph.

    ``plain`` maps a literal to its vertex.  For split gadgets ``split`` maps a
    literal to ``(in, out)`` and ``internal`` maps a variable to the arc id of
    its internal pair (the positive literal's arc; the negative one is ``^ 1``).
    """

    n_vars: int
    plain: dict[int, int] = field(default_factory=dict)
    split: dict[int, tuple[int, int]] = field(default_factory=dict)
    internal: dict[int, int] = field(default_factory=dict)

    def vertex(self, lit: int) -> int:
        if lit in self.split:
            return self.split[lit][1]
        return self.plain[lit]

    def variable_of_arc(self, a: int) -> int | None:
        for v, x in self.internal.items():
            if a in (x, x ^ 1):
                return v
        return None


def _check_krom(f: CnfFormula) -> None:
    for idx, c in enumerate(f.clauses):
        if len(c) > 2:
            raise MalformedInput(f"clause {idx + 1} has {len(c)} literals; expected at most 2")


def implication_graph(f: CnfFormula) -> tuple[SkewGraph, LiteralMap]:
    """D(F): clause ``c`` = {l1, l2} becomes the pair (-l1 -> l2), (-l2 -> l1).

    A unit clause {l} is read as {l, l} and contributes the pair (-l -> l)
    twice over, i.e. one conjugate pair of parallel arcs.
    """
    _check_krom(f)
    g = SkewGraph(f.n_vars)
    for c in f.clauses:
        l1, l2 = (c[0], c[0]) if len(c) == 1 else c
        g.add_pair(_literal_vertex(-l1), _literal_vertex(l2))
    lmap = LiteralMap(f.n_vars)
    for v in range(1, f.n_vars + 1):
        lmap.plain[v] = _literal_vertex(v)
        lmap.plain[-v] = _literal_vertex(-v)
    return g, lmap


def two_sat_satisfiable(f: CnfFormula) -> bool:
    g, _ = implication_graph(f)
    comp = scc_labels(g)
    return all(comp[2 * i] != comp[2 * i + 1] for i in range(f.n_vars))


def almost_2sat(f: CnfFormula, k: int, *, stats: list | None = None) -> list[int] | None:
    """At most k clause indices (0-based) whose removal makes F satisfiable, or None."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    g, _ = implication_graph(f)
    oracle = ExplicitOracle([(2 * i,) for i in range(f.n_vars)], d=1)
    res = solve(g, oracle, k)
    _record(stats, res)
    if not res.feasible:
        return None
    chosen = sorted({a >> 1 for a in res.multicut})
    if len(chosen) > k or not two_sat_satisfiable(f.without_clauses(chosen)):
        raise InternalInvariantError("Almost 2-SAT solution does not satisfy the formula")
    return chosen


def _record(stats, res: SolveResult) -> None:
    if stats is not None:
        stats.append(res.stats)


# -- bipartization -----------------------------------------------------------


def _edge_clauses(g: UndirectedGraph) -> CnfFormula:
    clauses = []
    for u, v in g.edges:
        clauses.append((u, v))
        clauses.append((-u, -v))
    return CnfFormula(g.n, clauses)


def edge_bipartization(g: UndirectedGraph, k: int, *, stats: list | None = None) -> list[int] | None:
    """At most k edge indices (0-based) whose removal leaves g bipartite, or None.

    An edge uv is the clause pair {u, v}, {-u, -v}: a colouring that puts u and
    v on the same side violates exactly one of the two.
    """
    clauses = almost_2sat(_edge_clauses(g), k, stats=stats)
    if clauses is None:
        return None
    edges = sorted({c >> 1 for c in clauses})
    if not is_bipartite(g.n, g.edges, removed_edges=edges):
        raise InternalInvariantError("edge bipartization left an odd cycle")
    return edges


def _split_in(lit: int) -> int:
    """Signed vertex of the in-copy of literal ``lit`` in a split gadget."""
    v = abs(lit)
    return 2 * v - 1 if lit > 0 else -(2 * v)


def _split_out(lit: int) -> int:
    v = abs(lit)
    return 2 * v if lit > 0 else -(2 * v - 1)


def _split_literals(g: SkewGraph, lmap: LiteralMap, n_vars: int) -> None:
    # conj(x_in) = (-x)_out, so the internal pair is (x_in -> x_out), ((-x)_in -> (-x)_out)
    for v in range(1, n_vars + 1):
        for lit in (v, -v):
            lmap.split[lit] = (vertex_index(_split_in(lit)), vertex_index(_split_out(lit)))
        lmap.internal[v] = g.add_pair(*lmap.split[v])


def oct(g: UndirectedGraph, k: int, *, stats: list | None = None) -> list[int] | None:
    """At most k vertices (1-based) whose removal leaves g bipartite, or None."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    f = _edge_clauses(g)
    d = SkewGraph(2 * g.n)
    lmap = LiteralMap(g.n)
    _split_literals(d, lmap, g.n)
    for c in f.clauses:
        l1, l2 = c
        for _ in range(k + 1):
            d.add_pair(lmap.split[-l1][1], lmap.split[l2][0])
    oracle = ExplicitOracle([(lmap.split[v][1],) for v in range(1, g.n + 1)], d=1)
    res = solve(d, oracle, k)
    _record(stats, res)
    if not res.feasible:
        return None
    verts = sorted({lmap.variable_of_arc(a) for a in res.multicut})
    if None in verts:
        raise InternalInvariantError("OCT solution uses a replicated arc")
    if len(verts) > k or not is_bipartite(g.n, g.edges, removed_vertices=verts):
        raise InternalInvariantError("OCT solution leaves an odd cycle")
    return verts


# -- q-Horn -------------------------------------------------------------------


@dataclass
class QuadraticCover:
    formula: CnfFormula
    # fresh variables introduced for each input clause, in order
    fresh: list[list[int]]


def _ordered(c) -> list[int]:
    return sorted(set(c), key=lambda lit: (abs(lit), lit))


def quadratic_cover(f: CnfFormula) -> QuadraticCover:
    """F2: clause l1..lw becomes {li, yi}, {-yi, l(i+1)} and {-yi, y(i+1)}.

    Literals are taken in variable order; fresh variables are numbered from
    ``n_vars + 1`` in clause order.  Unit clauses contribute nothing.
    """
    nxt = f.n_vars + 1
    clauses: list[tuple[int, int]] = []
    fresh: list[list[int]] = []
    for c in f.clauses:
        lits = _ordered(c)
        w = len(lits)
        ys = list(range(nxt, nxt + w - 1))
        nxt += w - 1
        fresh.append(ys)
        for i in range(w - 1):
            clauses.append((lits[i], ys[i]))
            clauses.append((-ys[i], lits[i + 1]))
        for i in range(w - 2):
            clauses.append((-ys[i], ys[i + 1]))
    return QuadraticCover(CnfFormula(nxt - 1, clauses), fresh)


def _violating_literals(f: CnfFormula, same) -> tuple[int, ...] | None:
    for c in f.clauses:
        lits = _ordered(c)
        if len(lits) < 3:
            continue
        hit = [lit for lit in lits if same(lit)]
        if len(hit) >= 3:
            return tuple(hit[:3])
    return None


def is_qhorn(f: CnfFormula) -> bool:
    """No clause has three literals each strongly connected to its complement in D(F2)."""
    f2 = quadratic_cover(f).formula
    g, _ = implication_graph(f2)
    comp = scc_labels(g)
    return _violating_literals(f, lambda lit: comp[vertex_index(lit)] == comp[vertex_index(-lit)]) is None


class QHornOracle:
    """Finds a clause with three literals whose out-copies sit with their conjugates."""

    d = 3

    def __init__(self, f: CnfFormula, lmap: LiteralMap):
        self.f = f
        self.lmap = lmap

    def find_violated(self, g: SkewGraph, mask: bytearray | None = None) -> tuple[int, ...] | None:
        comp = scc_labels(g, mask)
        out = self.lmap.vertex
        hit = _violating_literals(self.f, lambda lit: comp[out(lit)] == comp[out(lit) ^ 1])
        if hit is None:
            return None
        return tuple(out(lit) for lit in hit)


def qhorn_gadget(f: CnfFormula, k: int) -> tuple[SkewGraph, LiteralMap, QHornOracle]:
    """D(F2) with original literals split and every other arc pair copied k+1 times."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    cover = quadratic_cover(f)
    n = f.n_vars
    n_fresh = cover.formula.n_vars - n
    g = SkewGraph(2 * n + n_fresh)
    lmap = LiteralMap(n)
    _split_literals(g, lmap, n)

    def fresh_vertex(lit):
        y = abs(lit) - n
        return vertex_index(2 * n + y if lit > 0 else -(2 * n + y))

    def tail(lit):
        return lmap.split[lit][1] if abs(lit) <= n else fresh_vertex(lit)

    def head(lit):
        return lmap.split[lit][0] if abs(lit) <= n else fresh_vertex(lit)

    for l1, l2 in cover.formula.clauses:
        for _ in range(k + 1):
            g.add_pair(tail(-l1), head(l2))
    return g, lmap, QHornOracle(f, lmap)


def qhorn_backdoor(f: CnfFormula, k: int, *, stats: list | None = None) -> list[int] | None:
    """A deletion q-Horn backdoor of at most k variables, or None."""
    g, lmap, oracle = qhorn_gadget(f, k)
    res = solve(g, oracle, k)
    _record(stats, res)
    if not res.feasible:
        return None
    B = sorted({lmap.variable_of_arc(a) for a in res.multicut})
    if None in B:
        raise InternalInvariantError("backdoor solution uses a replicated arc")
    if len(B) > k or not is_qhorn(f.without_variables(B)):
        raise InternalInvariantError("returned backdoor does not leave a q-Horn formula")
    return B


def smallest(front_end, instance, k: int, **kw):
    """Run ``front_end`` with budgets 0, 1, ..., k and return the first solution.

    The branching search answers the decision question and may return any
    solution within budget; trying budgets in increasing order makes the
    first answer an optimum.
    """
    for j in range(k + 1):
        sol = front_end(instance, j, **kw)
        if sol is not None:
            return sol
    return None
