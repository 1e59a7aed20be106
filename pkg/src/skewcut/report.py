"""Scaling benchmark: time the solver on planted instances and plot the result."""

from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass

from .generator import gen_planted
from .solver import ExplicitOracle, solve, validate_multicut


@dataclass
class BenchRow:
    arcs: int
    seed: int
    seconds: float
    nodes: int
    feasible: bool


def time_planted(arcs: int, seed: int, k: int = 2, repeats: int = 1) -> BenchRow:
    """Best-of-``repeats`` solve time on one planted instance."""
    inst = gen_planted(seed, arcs, k)
    fam = inst.family_indices()
    best = None
    for _ in range(repeats):
        g = inst.graph()
        t0 = time.perf_counter()
        res = solve(g, ExplicitOracle(fam, 1), k)
        dt = time.perf_counter() - t0
        if res.feasible and not validate_multicut(g, fam, res.multicut):
            raise AssertionError("benchmark solution failed validation")
        best = dt if best is None else min(best, dt)
    return BenchRow(arcs, seed, best, res.stats.nodes, res.feasible)


def run_bench(sizes, seeds, k: int = 2, repeats: int = 1) -> list[BenchRow]:
    return [time_planted(m, s, k, repeats) for m in sizes for s in seeds]


def mean_times(rows: list[BenchRow]) -> dict[int, float]:
    acc: dict[int, list[float]] = {}
    for r in rows:
        acc.setdefault(r.arcs, []).append(r.seconds)
    return {m: sum(v) / len(v) for m, v in sorted(acc.items())}


def rows_csv(rows: list[BenchRow]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["arcs", "seed", "seconds", "nodes", "feasible"])
    for r in rows:
        w.writerow([r.arcs, r.seed, f"{r.seconds:.6f}", r.nodes, int(r.feasible)])
    return out.getvalue()


def plot_scaling(rows: list[BenchRow], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    means = mean_times(rows)
    xs = list(means)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.scatter([r.arcs for r in rows], [r.seconds for r in rows], s=12, alpha=0.5, label="runs")
    ax.plot(xs, [means[m] for m in xs], marker="o", label="mean")
    if xs:
        # linear reference through the first mean
        ax.plot(xs, [means[xs[0]] * m / xs[0] for m in xs], ls="--", color="grey", label="linear")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("arc pairs")
    ax.set_ylabel("solve time (s)")
    ax.legend()
    fig.tight_layout()
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
