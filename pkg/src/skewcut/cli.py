"""Command-line driver.

Solve commands print ``YES`` and the solution one item per line, or ``NO``.
Exit status: 0 = solution found, 1 = no solution, 2 = usage or input error.
Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from . import formats, generator, reductions
from .instances import CnfFormula, UndirectedGraph, is_bipartite
from .oracle import (
    BudgetExceeded,
    bf_almost2sat,
    bf_bipartization,
    bf_multicut,
    bf_qhorn_backdoor,
)
from .skew_graph import MalformedInput
from .solver import ExplicitOracle, SearchStats, solve, splits_family, validate_multicut

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

SOLVE_COMMANDS = {
    # command: (file format, help)
    "ssmc": ("ssmc", "skew-symmetric multicut on an ssmc file"),
    "a2sat": ("cnf", "Almost 2-SAT: delete at most k clauses"),
    "oct": ("edge", "odd cycle transversal: delete at most k vertices"),
    "ebip": ("edge", "edge bipartization: delete at most k edges"),
    "qhorn": ("cnf", "deletion q-Horn backdoor of at most k variables"),
}


class Answer:
    def __init__(self, lines: list[str], items: list):
        self.lines = lines  # text output, one per line
        self.items = items  # the same content for --json


def _solve_ssmc(inst: formats.SsmcInstance, k, brute, minimize, stats):
    g = inst.graph()
    fam = inst.family_indices()
    if brute:
        res = bf_multicut(g, fam, k)
        arcs = list(res.witness) if res.feasible else None
    else:
        oracle = ExplicitOracle(fam, inst.d)
        budgets = range(k + 1) if minimize else [k]
        arcs = None
        for j in budgets:
            r = solve(g, oracle, j)
            stats.append(r.stats)
            if r.feasible:
                arcs = sorted(r.multicut)
                break
    if arcs is None:
        return None
    if not validate_multicut(g, fam, arcs) or len(arcs) > 2 * k:
        raise AssertionError("multicut failed validation")
    pairs = [formats.signed_arc(g, a) for a in arcs]
    return Answer([f"a {u} {v}" for u, v in pairs], [list(p) for p in pairs])


def _front_end(fn, instance, k, minimize, stats):
    if minimize:
        return reductions.smallest(fn, instance, k, stats=stats)
    return fn(instance, k, stats=stats)


def _solve_a2sat(f: CnfFormula, k, brute, minimize, stats):
    if brute:
        res = bf_almost2sat(f, k)
        sol = list(res.witness) if res.feasible else None
    else:
        sol = _front_end(reductions.almost_2sat, f, k, minimize, stats)
    if sol is None:
        return None
    if len(sol) > k or not reductions.two_sat_satisfiable(f.without_clauses(sol)):
        raise AssertionError("clause deletion failed validation")
    items = [c + 1 for c in sol]
    return Answer([str(c) for c in items], items)


def _solve_oct(g: UndirectedGraph, k, brute, minimize, stats):
    if brute:
        res = bf_bipartization(g, k, "vertex")
        sol = list(res.witness) if res.feasible else None
    else:
        sol = _front_end(reductions.oct, g, k, minimize, stats)
    if sol is None:
        return None
    if len(sol) > k or not is_bipartite(g.n, g.edges, removed_vertices=sol):
        raise AssertionError("vertex deletion failed validation")
    return Answer([str(v) for v in sol], list(sol))


def _solve_ebip(g: UndirectedGraph, k, brute, minimize, stats):
    if brute:
        res = bf_bipartization(g, k, "edge")
        sol = list(res.witness) if res.feasible else None
    else:
        sol = _front_end(reductions.edge_bipartization, g, k, minimize, stats)
    if sol is None:
        return None
    if len(sol) > k or not is_bipartite(g.n, g.edges, removed_edges=sol):
        raise AssertionError("edge deletion failed validation")
    edges = [g.edges[e] for e in sol]
    return Answer([f"{u} {v}" for u, v in edges], [list(e) for e in edges])


def _solve_qhorn(f: CnfFormula, k, brute, minimize, stats):
    if brute:
        res = bf_qhorn_backdoor(f, k)
        sol = list(res.witness) if res.feasible else None
    else:
        sol = _front_end(reductions.qhorn_backdoor, f, k, minimize, stats)
    if sol is None:
        return None
    if len(sol) > k or not reductions.is_qhorn(f.without_variables(sol)):
        raise AssertionError("backdoor failed validation")
    return Answer([str(v) for v in sol], list(sol))


_SOLVERS = {
    "ssmc": _solve_ssmc,
    "a2sat": _solve_a2sat,
    "oct": _solve_oct,
    "ebip": _solve_ebip,
    "qhorn": _solve_qhorn,
}


def _merge_stats(parts: list[SearchStats]) -> dict:
    keys = ["nodes", "pruned", "leaves", "rule_applications", "branchings", "oracle_calls"]
    out = {key: sum(getattr(s, key) for s in parts) for key in keys}
    out["max_depth"] = max((s.max_depth for s in parts), default=0)
    out["wall_time"] = round(sum(s.wall_time for s in parts), 6)
    return out


def _cmd_solve(args, out, err) -> int:
    fmt, _ = SOLVE_COMMANDS[args.command]
    if args.k < 0:
        err.write("error: -k must be nonnegative\n")
        return EXIT_ERROR
    inst = formats.parse(args.file, fmt)
    stats: list[SearchStats] = []
    ans = _SOLVERS[args.command](inst, args.k, args.brute_force, args.min, stats)
    merged = _merge_stats(stats)
    if args.stats:
        err.write(" ".join(f"{key}={val}" for key, val in merged.items()) + "\n")
    if args.json:
        rec = {"command": args.command, "k": args.k, "answer": "YES" if ans else "NO",
               "solution": ans.items if ans else None, "stats": merged}
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write("YES\n" if ans else "NO\n")
        if ans:
            for line in ans.lines:
                out.write(line + "\n")
    return EXIT_YES if ans else EXIT_NO


def _read_solution(path: str) -> tuple[bool, list[list[int]]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.split() for ln in fh.read().splitlines() if ln.strip()]
    if not lines or lines[0] not in (["YES"], ["NO"]):
        raise MalformedInput(f"{path}:1:1: expected YES or NO")
    items = []
    for no, toks in enumerate(lines[1:], 2):
        if toks and toks[0] == "a":
            toks = toks[1:]
        try:
            items.append([int(t) for t in toks])
        except ValueError:
            raise MalformedInput(f"{path}:{no}:1: expected integers") from None
    return lines[0] == ["YES"], items


def _cmd_verify(args, out, err) -> int:
    """Check a YES answer against its instance; prints VALID or INVALID."""
    fmt, _ = SOLVE_COMMANDS[args.kind]
    inst = formats.parse(args.instance, fmt)
    yes, items = _read_solution(args.solution)
    if not yes:
        err.write("nothing to verify: answer is NO\n")
        return EXIT_ERROR
    k = args.k
    ok = False
    if args.kind == "ssmc":
        g = inst.graph()
        want = {}
        for a in range(g.num_arcs):
            want.setdefault(formats.signed_arc(g, a), []).append(a)
        arcs = []
        for it in items:
            pool = want.get(tuple(it), [])
            if not pool or len(it) != 2:
                break
            arcs.append(pool.pop(0))
        else:
            # parallel arcs share a label, so closure is checked on labels;
            # which copy gets deleted does not change reachability
            labels = Counter(tuple(it) for it in items)
            closed = all(labels[(-v, -u)] == c and ((-v, -u) != (u, v) or c % 2 == 0)
                         for (u, v), c in labels.items())
            ok = closed and splits_family(g, inst.family_indices(), arcs) and (k is None or len(arcs) <= 2 * k)
    elif args.kind in ("a2sat", "qhorn", "oct"):
        xs = [it[0] for it in items if len(it) == 1]
        if len(xs) == len(items) and (k is None or len(xs) <= k):
            if args.kind == "a2sat":
                ok = all(1 <= c <= len(inst.clauses) for c in xs) and reductions.two_sat_satisfiable(
                    inst.without_clauses([c - 1 for c in xs]))
            elif args.kind == "qhorn":
                ok = reductions.is_qhorn(inst.without_variables(xs))
            else:
                ok = all(1 <= v <= inst.n for v in xs) and is_bipartite(inst.n, inst.edges, removed_vertices=xs)
    else:
        pool = list(enumerate(inst.edges))
        chosen = []
        for it in items:
            match = next((i for i, e in pool if list(e) == it), None)
            if match is None:
                break
            pool = [(i, e) for i, e in pool if i != match]
            chosen.append(match)
        else:
            ok = (k is None or len(chosen) <= k) and is_bipartite(inst.n, inst.edges, removed_edges=chosen)
    out.write("VALID\n" if ok else "INVALID\n")
    return EXIT_YES if ok else EXIT_NO


def _cmd_gen(args, out, err) -> int:
    kind = args.kind
    note = [f"generated by skewcut gen {kind} seed={args.seed}"]
    if kind == "ssmc":
        inst = generator.gen_ssmc(args.seed, args.pairs, args.arcs, args.d, args.sets, args.gen_k)
        text = formats.emit_ssmc(inst, note)
    elif kind == "planted":
        inst = generator.gen_planted(args.seed, args.arcs, args.gen_k)
        text = formats.emit_ssmc(inst, note)
    elif kind == "cnf":
        text = formats.emit_cnf(generator.gen_cnf(args.seed, args.vars, args.clauses, args.width), note)
    else:
        text = formats.emit_edge(generator.gen_graph(args.seed, args.n, args.p), note)
    out.write(text)
    return EXIT_YES


def _cmd_bench(args, out, err) -> int:
    from . import report

    rows = report.run_bench(args.sizes, range(args.seed, args.seed + args.seeds), args.bench_k, args.repeats)
    table = report.rows_csv(rows)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "scaling.csv"), "w", encoding="utf-8") as fh:
        fh.write(table)
    report.plot_scaling(rows, os.path.join(args.out, "scaling.png"))
    out.write(table)
    means = report.mean_times(rows)
    ms = list(means)
    for a, b in zip(ms, ms[1:]):
        err.write(f"ratio {b}/{a}: {means[b] / means[a]:.2f}\n")
    return EXIT_YES


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skewcut", description="Skew-symmetric multicut and its front-ends.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (fmt, help_) in SOLVE_COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help=f"instance in {fmt} format")
        sp.add_argument("-k", type=int, required=True, help="budget")
        sp.add_argument("--brute-force", action="store_true", help="use the exhaustive reference instead")
        sp.add_argument("--min", action="store_true", help="return a smallest solution")
        sp.add_argument("--stats", action="store_true", help="search statistics on stderr")
        sp.add_argument("--json", action="store_true", help="one JSON record on stdout")

    v = sub.add_parser("verify", help="check a YES answer against its instance")
    v.add_argument("kind", choices=list(SOLVE_COMMANDS))
    v.add_argument("instance")
    v.add_argument("solution")
    v.add_argument("-k", type=int, default=None, help="also enforce the budget")

    g = sub.add_parser("gen", help="write a seeded random instance to stdout")
    g.add_argument("kind", choices=["ssmc", "cnf", "graph", "planted"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--pairs", type=int, default=6)
    g.add_argument("--arcs", type=int, default=12)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--sets", type=int, default=None)
    g.add_argument("--k", dest="gen_k", type=int, default=None)
    g.add_argument("--vars", type=int, default=5)
    g.add_argument("--clauses", type=int, default=9)
    g.add_argument("--width", type=int, default=2)
    g.add_argument("-n", type=int, default=8)
    g.add_argument("-p", type=float, default=0.4)

    b = sub.add_parser("bench", help="time planted instances; write scaling.csv and scaling.png")
    b.add_argument("--sizes", type=int, nargs="+", default=[10000, 20000, 40000])
    b.add_argument("--seeds", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--k", dest="bench_k", type=int, default=2)
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--out", default="bench_out")
    return p


def run_cli(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    if args.command == "gen" and args.gen_k is None:
        args.gen_k = 2 if args.kind == "planted" else 1
    handler = {"verify": _cmd_verify, "gen": _cmd_gen, "bench": _cmd_bench}.get(args.command, _cmd_solve)
    try:
        return handler(args, out, err)
    except (MalformedInput, BudgetExceeded, OSError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
