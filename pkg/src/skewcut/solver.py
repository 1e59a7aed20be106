"""Branching solver for d-skew-symmetric multicut.

An instance carries a terminal side L; a solution must additionally be an
L-L' self-conjugate separator.  The search keeps an explicit stack of
frames (mask checkpoint, L, budget) and tracks the progress measure
``2k - lambda(L, L')`` at every node.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Protocol, Sequence

from .components import Component, IrregularSeparator, NoComponent, find_lk_component
from .separators import (
    ContractViolation,
    InternalInvariantError,
    has_min_separator_with_pair,
    min_separator_with_pair,
    separator_value,
)
from .skew_graph import MalformedInput, SkewGraph, has_path, is_regular, reachable, scc_labels, set_symmetry


class ViolationOracle(Protocol):
    d: int

    def find_violated(self, g: SkewGraph, mask: bytearray) -> tuple[int, ...] | None:
        """Some family member whose vertices all share an SCC with their conjugates."""


class ExplicitOracle:
    """Violation oracle over an explicit list of vertex-index sets."""

    def __init__(self, family: Iterable[Iterable[int]], d: int | None = None):
        self.family = [tuple(J) for J in family]
        for J in self.family:
            if not J:
                raise MalformedInput("empty set in terminal family")
        self.d = d if d is not None else max((len(J) for J in self.family), default=1)
        if any(len(J) > self.d for J in self.family):
            raise ContractViolation("family set larger than d")

    def find_violated(self, g: SkewGraph, mask: bytearray | None = None) -> tuple[int, ...] | None:
        if not self.family:
            return None
        comp = scc_labels(g, mask)
        for J in self.family:
            if all(comp[v] == comp[v ^ 1] for v in J):
                return J
        return None


def explicit_oracle(family, d: int | None = None) -> ExplicitOracle:
    return ExplicitOracle(family, d)


class SearchBudgetExceeded(AssertionError):
    """The search tree outgrew the (2d)^mu leaf bound."""


@dataclass
class SearchStats:
    nodes: int = 0  # search nodes with nonnegative measure
    pruned: int = 0  # children rejected on arrival because lambda > 2k
    leaves: int = 0
    rule_applications: int = 0
    branchings: int = 0
    oracle_calls: int = 0
    max_depth: int = 0
    leaf_budget: int = 0
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "pruned": self.pruned,
            "leaves": self.leaves,
            "rule_applications": self.rule_applications,
            "branchings": self.branchings,
            "oracle_calls": self.oracle_calls,
            "max_depth": self.max_depth,
            "wall_time": round(self.wall_time, 6),
        }


@dataclass
class SolveResult:
    multicut: list[int] | None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def feasible(self) -> bool:
        return self.multicut is not None


def apply_reduction_rule(g: SkewGraph, L, S: Sequence[int], mask: bytearray | None = None) -> tuple[int, int]:
    """Pick the conjugate pair a safe solution may contain, from an irregular minimum separator S."""
    m = g.deleted if mask is None else mask
    if set_symmetry(S).regular:
        raise ContractViolation("reduction rule needs an irregular separator")
    closure = set(S) | {a ^ 1 for a in S}
    Z = reachable(g, L, closure, mask=m)
    out = g.out_boundary(Z, m)
    if len(out) != len(S):
        raise InternalInvariantError("boundary of R(L, S ∪ S') is not a minimum separator")
    out_set = set(out)
    for y in out:
        if y ^ 1 in out_set:
            return (y, y ^ 1) if y < y ^ 1 else (y ^ 1, y)
    raise InternalInvariantError("no conjugate pair on the boundary of R(L, S ∪ S')")


def validate_multicut(g: SkewGraph, family, S: Iterable[int], mask: bytearray | None = None) -> bool:
    """S is self-conjugate and splits some vertex of every family set from its conjugate."""
    S = set(S)
    if not set_symmetry(S).self_conjugate:
        return False
    return splits_family(g, family, S, mask)


def splits_family(g: SkewGraph, family, S: Iterable[int], mask: bytearray | None = None) -> bool:
    """Every family set has a vertex outside its conjugate's SCC once S is deleted."""
    m = bytearray(g.deleted if mask is None else mask)
    for a in S:
        m[a] = 1
    comp = scc_labels(g, m)
    return all(any(comp[v] != comp[v ^ 1] for v in J) for J in family)


@dataclass
class _Frame:
    mask: bytearray
    L: tuple
    k: int
    depth: int
    parent: int
    parent_mu: int | None = None
    parent_lam: int = 0
    kind: str = "root"  # root | terminal | delete | extend
    single_arc: bool = False


def solve(
    g: SkewGraph,
    oracle: ViolationOracle,
    k: int,
    L: Iterable[int] = (),
    *,
    check_invariants: bool = True,
) -> SolveResult:
    """Decide the instance; return a self-conjugate multicut of size <= 2k or None."""
    if k < 0:
        raise ContractViolation("budget must be nonnegative")
    L = tuple(sorted(set(L)))
    if not is_regular(L):
        raise ContractViolation("L must be regular")
    t0 = time.perf_counter()
    stats = SearchStats()
    two_d = 2 * max(1, oracle.d)
    base = g.deleted
    stack = [_Frame(bytearray(base), L, k, 0, -1)]
    has_child: set[int] = set()
    root_mu = None
    node_id = 0
    while stack:
        fr = stack.pop()
        me = node_id
        node_id += 1
        stats.max_depth = max(stats.max_depth, fr.depth)
        mask, terms, budget = fr.mask, fr.L, fr.k
        first = True
        while True:
            lam, outcome = _measure(g, terms, budget, mask)
            mu = 2 * budget - lam if lam is not None else -1
            if first:
                if fr.parent_mu is None:
                    root_mu = max(mu, 0)
                    stats.leaf_budget = two_d ** root_mu
                elif check_invariants:
                    _check_branch(fr, lam, mu)
                first = False
                if mu < 0:
                    stats.pruned += 1
                else:
                    stats.nodes += 1
                if mu >= 0 and fr.parent >= 0 and fr.parent not in has_child:
                    has_child.add(fr.parent)
                    stats.leaves -= 1
                if mu >= 0:
                    stats.leaves += 1
                    if stats.leaves > stats.leaf_budget:
                        raise SearchBudgetExceeded(f"{stats.leaves} leaves > (2d)^mu = {stats.leaf_budget}")
            elif check_invariants and mu != prev_mu:
                raise InternalInvariantError(f"reduction rule changed the measure: {prev_mu} -> {mu}")
            if mu < 0:
                break

            if lam == 0:
                stats.oracle_calls += 1
                J = oracle.find_violated(g, mask)
                if J is None:
                    stats.wall_time = time.perf_counter() - t0
                    sol = [a for a in range(g.num_arcs) if mask[a] and not base[a]]
                    return SolveResult(sol, stats)
                if mu == 0:
                    break
                stats.branchings += 1
                children = [(v,) for v in J] + [(v ^ 1,) for v in J]
                for single in reversed(children):
                    stack.append(_Frame(mask, single, budget, fr.depth + 1, me, mu, lam, "terminal"))
                break

            if isinstance(outcome, IrregularSeparator):
                S = list(outcome.S)
            else:
                Z = outcome.Z
                out = g.out_boundary(Z, mask)
                if check_invariants and len(out) != lam:
                    raise InternalInvariantError("component boundary is not a minimum separator")
                S = _rule_separator(g, terms, out, lam, mask)
            if S is not None:
                y, _ = apply_reduction_rule(g, terms, S, mask)
                mask = bytearray(mask)
                g.delete_pair(y, mask)
                budget -= 1
                stats.rule_applications += 1
                prev_mu = mu
                continue

            if mu == 0:
                break
            stats.branchings += 1
            a = out[0]
            head = g.heads[a]
            if (head ^ 1) not in Z:
                extend = tuple(sorted(Z | {head}))
                stack.append(_Frame(mask, extend, budget, fr.depth + 1, me, mu, lam, "extend"))
            m2 = bytearray(mask)
            g.delete_pair(a, m2)
            stack.append(_Frame(m2, terms, budget - 1, fr.depth + 1, me, mu, lam, "delete", len(out) == 1))
            break
    stats.wall_time = time.perf_counter() - t0
    return SolveResult(None, stats)


def _measure(g, terms, budget, mask):
    """Return (lambda or None when it exceeds 2*budget, component outcome)."""
    if not terms:
        return 0, None
    if not has_path(g, terms, {v ^ 1 for v in terms}, mask):
        return 0, None
    outcome = find_lk_component(g, terms, budget, mask)
    if isinstance(outcome, NoComponent):
        return None, outcome
    return outcome.lam, outcome


def _rule_separator(g, terms, out, lam, mask):
    """An irregular minimum separator through the component boundary, if any."""
    out_set = set(out)
    if any(a ^ 1 in out_set for a in out):
        return out
    for a in out:
        if has_min_separator_with_pair(g, terms, a, lam, mask):
            return min_separator_with_pair(g, terms, a, lam, mask)
    return None


def _check_branch(fr: _Frame, lam, mu) -> None:
    if mu >= fr.parent_mu:
        raise InternalInvariantError(f"measure did not decrease: {fr.parent_mu} -> {mu} ({fr.kind})")
    if lam is None:
        return
    if fr.kind == "extend" and lam <= fr.parent_lam:
        raise InternalInvariantError("extending the component did not increase lambda")
    if fr.kind == "delete":
        if lam < fr.parent_lam - 1:
            raise InternalInvariantError("deleting a boundary pair dropped lambda by more than 1")
        if fr.single_arc and lam >= fr.parent_lam:
            raise InternalInvariantError("deleting the single boundary arc did not drop lambda")
