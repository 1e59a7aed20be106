"""Readers and writers for the three instance formats.

``ssmc``
    ``p ssmc <n_pairs> <n_arc_pairs> <k> <d>`` then ``a <u> <v>`` lines (each
    declares the arc u -> v and its conjugate, vertices written ``±i``) and
    ``t <v1> ... <vj>`` lines with ``1 <= j <= d``.
``cnf``
    DIMACS: ``p cnf <n_vars> <n_clauses>``; clauses are zero-terminated and
    may span lines.  A ``%`` line ends the body.
``edge``
    DIMACS graph: ``p edge <n> <m>`` then ``e <u> <v>`` lines.

``c`` lines and blank lines are ignored everywhere.  Errors carry the
1-based line and column of the offending token.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .instances import CnfFormula, UndirectedGraph
from .skew_graph import MalformedInput, SkewGraph, vertex_index, vertex_label


class ParseError(MalformedInput):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass
class SsmcInstance:
    n_pairs: int
    arcs: list[tuple[int, int]]  # signed, one entry per declared pair
    k: int
    d: int
    family: list[tuple[int, ...]] = field(default_factory=list)  # signed

    def graph(self) -> SkewGraph:
        g = SkewGraph(self.n_pairs)
        for u, v in self.arcs:
            g.add_signed_pair(u, v)
        return g

    def family_indices(self) -> list[tuple[int, ...]]:
        return [tuple(vertex_index(v) for v in J) for J in self.family]


def _tokens(line: str):
    """(column, token) pairs of a whitespace-separated line."""
    col = 0
    out = []
    for tok in line.split():
        col = line.index(tok, col)
        out.append((col + 1, tok))
        col += len(tok)
    return out


class _Reader:
    def __init__(self, text: str, source: str):
        self.lines = text.splitlines()
        self.source = source

    def err(self, msg, line, col=1):
        return ParseError(msg, line, col, self.source)

    def body(self):
        """Yield (line number, tokens) for meaningful lines."""
        for no, raw in enumerate(self.lines, 1):
            toks = _tokens(raw)
            if not toks or toks[0][1] == "c":
                continue
            yield no, toks

    def int_token(self, tok, no, lo=None, hi=None, what="value"):
        col, s = tok
        try:
            x = int(s)
        except ValueError:
            raise self.err(f"expected an integer {what}, got {s!r}", no, col) from None
        if (lo is not None and x < lo) or (hi is not None and x > hi):
            raise self.err(f"{what} {x} out of range", no, col)
        return x

    def header(self, it, kind: str, n_fields: int):
        for no, toks in it:
            if toks[0][1] != "p":
                raise self.err(f"expected 'p {kind}' header before {toks[0][1]!r}", no, toks[0][0])
            if len(toks) < 2 or toks[1][1] != kind:
                col = toks[1][0] if len(toks) > 1 else toks[0][0]
                raise self.err(f"expected format '{kind}'", no, col)
            if len(toks) != 2 + n_fields:
                raise self.err(f"header needs {n_fields} numbers, got {len(toks) - 2}", no, toks[-1][0])
            return no, [self.int_token(t, no, lo=0, what="header field") for t in toks[2:]]
        raise self.err(f"missing 'p {kind}' header", max(1, len(self.lines)))


def _read_text(src) -> tuple[str, str]:
    if isinstance(src, str):
        with open(src, encoding="utf-8") as fh:
            return fh.read(), src
    return src.read(), getattr(src, "name", "<input>")


def parse_ssmc_text(text: str, source: str = "<input>") -> SsmcInstance:
    r = _Reader(text, source)
    it = r.body()
    hno, (n_pairs, n_arcs, k, d) = r.header(it, "ssmc", 4)
    if d < 1:
        raise r.err("d must be at least 1", hno)
    arcs: list[tuple[int, int]] = []
    family: list[tuple[int, ...]] = []

    def vertex(tok, no):
        col, s = tok
        x = r.int_token(tok, no, what="vertex")
        if x == 0 or abs(x) > n_pairs:
            raise r.err(f"vertex {x} outside ±1..±{n_pairs}", no, col)
        return x

    for no, toks in it:
        tag = toks[0][1]
        if tag == "a":
            if len(toks) != 3:
                raise r.err("arc line needs exactly two vertices", no, toks[0][0])
            if len(arcs) == n_arcs:
                raise r.err(f"more than the {n_arcs} arc pairs declared in the header", no)
            arcs.append((vertex(toks[1], no), vertex(toks[2], no)))
        elif tag == "t":
            if not 1 <= len(toks) - 1 <= d:
                raise r.err(f"terminal set must have 1..{d} vertices", no, toks[0][0])
            family.append(tuple(vertex(t, no) for t in toks[1:]))
        elif tag == "p":
            raise r.err("duplicate header", no, toks[0][0])
        else:
            raise r.err(f"unknown line tag {tag!r}", no, toks[0][0])
    if len(arcs) != n_arcs:
        raise r.err(f"header declares {n_arcs} arc pairs, body has {len(arcs)}", hno)
    return SsmcInstance(n_pairs, arcs, k, d, family)


def parse_cnf_text(text: str, source: str = "<input>") -> CnfFormula:
    r = _Reader(text, source)
    it = r.body()
    hno, (n_vars, n_clauses) = r.header(it, "cnf", 2)
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    cur_start = None
    for no, toks in it:
        if toks[0][1] == "%":
            break
        if toks[0][1] == "p":
            raise r.err("duplicate header", no, toks[0][0])
        for tok in toks:
            lit = r.int_token(tok, no, what="literal")
            if lit == 0:
                if not cur:
                    raise r.err("empty clause", no, tok[0])
                clauses.append(tuple(cur))
                cur = []
                continue
            if abs(lit) > n_vars:
                raise r.err(f"literal {lit} outside ±1..±{n_vars}", no, tok[0])
            if not cur:
                cur_start = no
            cur.append(lit)
            if len(clauses) == n_clauses:
                raise r.err(f"more than the {n_clauses} clauses declared in the header", no, tok[0])
    if cur:
        raise r.err("last clause is not terminated by 0", cur_start)
    if len(clauses) != n_clauses:
        raise r.err(f"header declares {n_clauses} clauses, body has {len(clauses)}", hno)
    return CnfFormula(n_vars, clauses)


def parse_edge_text(text: str, source: str = "<input>") -> UndirectedGraph:
    r = _Reader(text, source)
    it = r.body()
    hno, (n, m) = r.header(it, "edge", 2)
    edges: list[tuple[int, int]] = []
    for no, toks in it:
        tag = toks[0][1]
        if tag != "e":
            if tag == "p":
                raise r.err("duplicate header", no, toks[0][0])
            raise r.err(f"unknown line tag {tag!r}", no, toks[0][0])
        if len(toks) != 3:
            raise r.err("edge line needs exactly two vertices", no, toks[0][0])
        u = r.int_token(toks[1], no, 1, n, "vertex")
        v = r.int_token(toks[2], no, 1, n, "vertex")
        if u == v:
            raise r.err(f"self-loop at vertex {u}", no, toks[2][0])
        if len(edges) == m:
            raise r.err(f"more than the {m} edges declared in the header", no)
        edges.append((u, v))
    if len(edges) != m:
        raise r.err(f"header declares {m} edges, body has {len(edges)}", hno)
    return UndirectedGraph(n, edges)


_PARSERS = {"ssmc": parse_ssmc_text, "cnf": parse_cnf_text, "edge": parse_edge_text}


def parse(src: str | TextIO, fmt: str):
    """Parse a path or open stream in format ``ssmc``, ``cnf`` or ``edge``."""
    if fmt not in _PARSERS:
        raise ValueError(f"unknown format {fmt!r}")
    text, name = _read_text(src)
    return _PARSERS[fmt](text, name)


# -- writers -----------------------------------------------------------------


def emit_ssmc(inst: SsmcInstance, comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"c {c}\n")
    out.write(f"p ssmc {inst.n_pairs} {len(inst.arcs)} {inst.k} {inst.d}\n")
    for u, v in inst.arcs:
        out.write(f"a {u} {v}\n")
    for J in inst.family:
        out.write("t " + " ".join(map(str, J)) + "\n")
    return out.getvalue()


def emit_cnf(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"c {c}\n")
    out.write(f"p cnf {f.n_vars} {len(f.clauses)}\n")
    for c in f.clauses:
        out.write(" ".join(map(str, c)) + " 0\n")
    return out.getvalue()


def emit_edge(g: UndirectedGraph, comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"c {c}\n")
    out.write(f"p edge {g.n} {len(g.edges)}\n")
    for u, v in g.edges:
        out.write(f"e {u} {v}\n")
    return out.getvalue()


def signed_arc(g: SkewGraph, a: int) -> tuple[int, int]:
    return vertex_label(g.tails[a]), vertex_label(g.heads[a])
