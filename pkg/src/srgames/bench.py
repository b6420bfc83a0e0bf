"""Benchmark harness: comparison counts, iterations and wall time per run.

A suite is a mapping such as::

    {"kind": "srg", "algorithms": ["sort", "loglog"], "sizes": [1024, 4096], "seeds": [0, 1]}

For ``kind = "srg"`` a size is the number of terminals; for ``kind = "net"``
it is the number of arcs.  Optional ``params`` override the generator
settings below.  Everything except ``wall_ms`` is deterministic.
"""
from __future__ import annotations

import csv
import math
import time
from typing import Iterable, Mapping

import numpy as np

from .generators import gen_random_network, gen_random_srg
from .interdiction import (
    solve_strong_capacities,
    solve_strong_sorted_capacities,
    solve_weak_logstar_capacities,
    solve_weak_loglog_capacities,
    sorted_arcs,
)
from .ledger import ComparisonLedger
from .retrograde import solve_strong_sorted, sorted_terminals, sorting_method
from .weak import SOLVERS

COLUMNS = ("algo", "n", "m", "comparisons", "iterations", "wall_ms", "seed")
NONDETERMINISTIC = ("wall_ms",)

SRG_ALGOS = ("sort", "sorted", "paterson", "loglog", "logstar")
NET_ALGOS = ("strong", "sorted", "loglog", "logstar")

SRG_DEFAULTS = {"non_terminal_ratio": 1.0, "min_share": 0.25, "out_degree": (1, 4), "positive": True}
NET_DEFAULTS = {"arcs_per_vertex": 4, "budget": (0, 1)}


def make_srg(n: int, seed: int, params: Mapping | None = None):
    p = {**SRG_DEFAULTS, **(params or {})}
    n_non = max(1, round(n * p["non_terminal_ratio"]))
    n_min = round(n_non * p["min_share"])
    lo = 1 if p["positive"] else -4 * n
    return gen_random_srg(
        n_non - n_min, n_min, n, tuple(p["out_degree"]), (lo, 4 * n), seed,
        acyclic=True, cover_terminals=True,
    )


def make_net(m: int, seed: int, params: Mapping | None = None):
    p = {**NET_DEFAULTS, **(params or {})}
    nv = max(2, m // p["arcs_per_vertex"])
    return gen_random_network(nv, m, tuple(p["budget"]), seed)


def _srg_row(algo: str, game, seed: int) -> dict:
    ledger = ComparisonLedger()
    iterations = 1
    if algo == "sorted":
        order = sorted_terminals(game)  # sorted outside the ledger
        t0 = time.perf_counter()
        solve_strong_sorted(game, order, ledger)
    elif algo == "sort":
        t0 = time.perf_counter()
        sorting_method(game, ledger)
    else:
        t0 = time.perf_counter()
        iterations = SOLVERS[algo](game, game.start, ledger).iterations
    wall = (time.perf_counter() - t0) * 1000
    return {"algo": algo, "n": game.n, "m": game.m, "comparisons": ledger.count,
            "iterations": iterations, "wall_ms": round(wall, 3), "seed": seed}


def _net_row(algo: str, net, seed: int) -> dict:
    ledger = ComparisonLedger()
    iterations = 1
    if algo == "sorted":
        order = sorted_arcs(net)
        t0 = time.perf_counter()
        solve_strong_sorted_capacities(net, order, ledger)
    elif algo == "strong":
        t0 = time.perf_counter()
        solve_strong_capacities(net, ledger)
    else:
        solver = solve_weak_loglog_capacities if algo == "loglog" else solve_weak_logstar_capacities
        t0 = time.perf_counter()
        iterations = solver(net, ledger).iterations
    wall = (time.perf_counter() - t0) * 1000
    return {"algo": algo, "n": len(net.vertices), "m": net.m, "comparisons": ledger.count,
            "iterations": iterations, "wall_ms": round(wall, 3), "seed": seed}


def bench(suite: Mapping) -> list[dict]:
    """Run every (size, seed, algorithm) combination of ``suite``; one row each."""
    kind = suite.get("kind", "srg")
    if kind not in ("srg", "net"):
        raise ValueError(f"unknown suite kind {kind!r}")
    allowed = SRG_ALGOS if kind == "srg" else NET_ALGOS
    algos = list(suite.get("algorithms", allowed))
    for a in algos:
        if a not in allowed:
            raise ValueError(f"unknown {kind} algorithm {a!r}; expected one of {allowed}")
    params = suite.get("params")
    rows = []
    for size in suite["sizes"]:
        for seed in suite.get("seeds", [0]):
            if kind == "srg":
                inst = make_srg(size, seed, params)
                rows += [_srg_row(a, inst, seed) for a in algos]
            else:
                inst = make_net(size, seed, params)
                rows += [_net_row(a, inst, seed) for a in algos]
    return rows


def write_csv(rows: Iterable[Mapping], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: r[c] for c in COLUMNS})


def nlogn_slope(rows: Iterable[Mapping], algo: str = "sort") -> float:
    """Least-squares slope of log(comparisons) against log(n log2 n) for ``algo``'s rows."""
    pts = [(r["n"], r["comparisons"]) for r in rows if r["algo"] == algo and r["n"] > 1]
    if len(pts) < 2:
        raise ValueError("need rows for at least two sizes")
    x = np.log([n * math.log2(n) for n, _ in pts])
    y = np.log([c for _, c in pts])
    return float(np.polyfit(x, y, 1)[0])
