"""Seeded instance generator.

All randomness comes from SplitMix64 so that a corpus can be regenerated
byte-for-byte by any implementation::

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    return z ^ (z >> 31)

The initial state is the seed.  ``below(n)`` is ``next() mod n``,
``chance(p)`` is ``(next() >> 11) / 2^53 < p`` and ``sign()`` is ``+1`` when
``below(2) == 0``, else ``-1``.  Draw order is spelled out per generator.
"""

from __future__ import annotations

from .formats import SsmcInstance
from .instances import CnfFormula, UndirectedGraph

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def chance(self, p: float) -> bool:
        return (self.next() >> 11) / float(1 << 53) < p

    def sign(self) -> int:
        return 1 if self.below(2) == 0 else -1

    def literal(self, n: int) -> int:
        """Variable first, then sign."""
        v = self.below(n) + 1
        return v * self.sign()

    def distinct(self, n: int, j: int) -> list[int]:
        """j distinct values of 1..n, drawn by rejection in order."""
        out: list[int] = []
        while len(out) < j:
            x = self.below(n) + 1
            if x not in out:
                out.append(x)
        return out


def gen_ssmc(seed: int, pairs: int, arcs: int, d: int = 1, sets: int | None = None, k: int = 1) -> SsmcInstance:
    """Per arc: tail literal, head literal.  Then ``sets`` terminal sets (default
    ``pairs // 2`` or 1): size ``1 + below(d)``, distinct vertex pairs, each with a sign."""
    if pairs < 1 or d < 1:
        raise ValueError("need at least one vertex pair and d >= 1")
    rng = SplitMix64(seed)
    arc_list = [(rng.literal(pairs), rng.literal(pairs)) for _ in range(arcs)]
    n_sets = max(1, pairs // 2) if sets is None else sets
    family = []
    for _ in range(n_sets):
        size = 1 + rng.below(min(d, pairs))
        family.append(tuple(v * rng.sign() for v in rng.distinct(pairs, size)))
    return SsmcInstance(pairs, arc_list, k, d, family)


def gen_cnf(seed: int, n_vars: int, n_clauses: int, width: int = 2) -> CnfFormula:
    """Every clause has exactly ``width`` literals over distinct variables; the
    variables are drawn first, then one sign per literal."""
    if width > n_vars:
        raise ValueError("width exceeds the number of variables")
    rng = SplitMix64(seed)
    clauses = []
    for _ in range(n_clauses):
        vs = rng.distinct(n_vars, width)
        clauses.append(tuple(v * rng.sign() for v in vs))
    return CnfFormula(n_vars, clauses)


def gen_graph(seed: int, n: int, p: float) -> UndirectedGraph:
    """G(n, p): pairs u < v in lexicographic order, one ``chance(p)`` each."""
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.chance(p)]
    return UndirectedGraph(n, edges)


def gen_planted(seed: int, arcs: int, k: int = 2) -> SsmcInstance:
    """A YES instance with ``arcs`` arc pairs, d = 1 and budget k.

    The implication graph of a 2-CNF satisfied by a hidden assignment, plus
    k unit clauses contradicting it; the family is every variable singleton.
    Deleting the k planted arc pairs leaves a satisfiable formula, so the
    instance is solvable within budget.  Draw order: the hidden assignment
    (one ``below(2)`` per variable), then per clause two distinct variables
    and two signs (the second sign is flipped if neither literal is true),
    then k distinct planted variables.
    """
    n = max(k + 1, arcs // 2)
    rng = SplitMix64(seed)
    truth = [None] + [rng.below(2) == 0 for _ in range(n)]

    def true_lit(v):
        return v if truth[v] else -v

    clauses = []
    for _ in range(arcs - k):
        a, b = rng.distinct(n, 2)
        la, lb = a * rng.sign(), b * rng.sign()
        if la != true_lit(a) and lb != true_lit(b):
            lb = -lb
        clauses.append((la, lb))
    for v in rng.distinct(n, k):
        clauses.append((-true_lit(v),))
    arc_list = []
    for c in clauses:
        l1, l2 = (c[0], c[0]) if len(c) == 1 else c
        arc_list.append((-l1, l2))
    return SsmcInstance(n, arc_list, k, 1, [(v,) for v in range(1, n + 1)])
