"""Plain value types shared by the front-ends, parsers and reference oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

from .skew_graph import MalformedInput


@dataclass
class CnfFormula:
    """Clauses over variables ``1..n_vars``; literal ``-i`` negates variable ``i``."""

    n_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        self.clauses = [tuple(c) for c in self.clauses]
        for idx, c in enumerate(self.clauses):
            if not c:
                raise MalformedInput(f"clause {idx + 1} is empty")
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise MalformedInput(f"literal {lit} in clause {idx + 1} outside ±1..±{self.n_vars}")

    @property
    def length(self) -> int:
        return sum(len(c) for c in self.clauses)

    @property
    def width(self) -> int:
        return max((len(set(c)) for c in self.clauses), default=0)

    def variables(self) -> set[int]:
        return {abs(lit) for c in self.clauses for lit in c}

    def without_clauses(self, indices) -> "CnfFormula":
        drop = set(indices)
        return CnfFormula(self.n_vars, [c for i, c in enumerate(self.clauses) if i not in drop])

    def without_variables(self, variables) -> "CnfFormula":
        """F - B: strip every literal over B; clauses left empty are dropped."""
        drop = set(variables)
        kept = []
        for c in self.clauses:
            rest = tuple(lit for lit in c if abs(lit) not in drop)
            if rest:
                kept.append(rest)
        return CnfFormula(self.n_vars, kept)


@dataclass
class UndirectedGraph:
    """Vertices ``1..n``; parallel edges are kept, self-loops rejected."""

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.edges = [tuple(e) for e in self.edges]
        for idx, (u, v) in enumerate(self.edges):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise MalformedInput(f"edge {idx + 1} endpoint outside 1..{self.n}")
            if u == v:
                raise MalformedInput(f"edge {idx + 1} is a self-loop at {u}")


def two_coloring(n: int, edges, removed_vertices=(), removed_edges=()) -> list[int] | None:
    """Proper 2-colouring (index 0 unused) of what remains, or None if not bipartite."""
    gone_v = set(removed_vertices)
    gone_e = set(removed_edges)
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for i, (u, v) in enumerate(edges):
        if i in gone_e or u in gone_v or v in gone_v:
            continue
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * (n + 1)
    for s in range(1, n + 1):
        if color[s] != -1 or s in gone_v:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = color[u] ^ 1
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(n: int, edges, removed_vertices=(), removed_edges=()) -> bool:
    return two_coloring(n, edges, removed_vertices, removed_edges) is not None
