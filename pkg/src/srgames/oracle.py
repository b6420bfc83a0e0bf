"""Brute-force ground truth for small instances.

Nothing here shares code with the solvers: game values come from
enumerating positional strategy profiles, interdiction widths from
enumerating removal sets and computing plain bottleneck paths.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .core import Owner, Solution, Srg
from .errors import IncompleteStrategy, InstanceTooLarge
from .network import INF, Network

DEFAULT_CAP = 10**6


def play_out(game: Srg, max_strategy: Mapping, min_strategy: Mapping, v) -> object:
    """Follow the chosen arcs from ``v``; a repeated vertex means infinite play (payoff 0)."""
    seen = set()
    while game.owner[v] is not Owner.TERMINAL:
        if v in seen:
            return 0
        seen.add(v)
        strategy = max_strategy if game.owner[v] is Owner.MAX else min_strategy
        if v not in strategy:
            raise IncompleteStrategy(f"no move chosen at {v!r}")
        a, b = game.arcs[strategy[v]]
        if a != v:
            raise IncompleteStrategy(f"arc {strategy[v]} does not leave {v!r}")
        v = b
    return game.payoff[v]


class _Board:
    """Index tables for fast repeated play-outs."""

    def __init__(self, game: Srg):
        self.labels = list(game.owner)
        idx = {v: i for i, v in enumerate(self.labels)}
        self.idx = idx
        self.n = len(self.labels)
        self.terminal_payoff = {idx[t]: float(p) for t, p in game.payoff.items()}
        out = {i: [] for i in range(self.n)}
        for e, (a, b) in enumerate(game.arcs):
            out[idx[a]].append((e, idx[b]))
        self.max_v = [idx[v] for v, o in game.owner.items() if o is Owner.MAX]
        self.min_v = [idx[v] for v, o in game.owner.items() if o is Owner.MIN]
        self.out = out

    def strategies(self, verts: list[int]) -> Iterable[dict]:
        for combo in itertools.product(*(self.out[v] for v in verts)):
            yield dict(zip(verts, combo))

    def count(self, verts: list[int]) -> int:
        return math.prod(len(self.out[v]) for v in verts)

    def outcomes(self, smax: dict, smin: dict) -> np.ndarray:
        succ = [-1] * self.n
        for s in (smax, smin):
            for v, (_, h) in s.items():
                succ[v] = h
        res = [None] * self.n
        for v, p in self.terminal_payoff.items():
            res[v] = p
        for v0 in range(self.n):
            if res[v0] is not None:
                continue
            path, on_path = [], set()
            v = v0
            while res[v] is None and v not in on_path:
                on_path.add(v)
                path.append(v)
                v = succ[v]
            r = res[v] if res[v] is not None else 0.0
            for u in path:
                res[u] = r
        return np.array(res, dtype=float)


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise InstanceTooLarge(f"{count} strategy profiles exceed the cap of {cap}")


def enumerate_values(game: Srg, cap: int = DEFAULT_CAP) -> dict:
    """max over Max strategies of min over Min strategies, per start vertex.

    Also computes min-max and raises AssertionError if the two differ, which
    would mean the enumeration itself is broken.
    """
    b = _Board(game)
    n_max, n_min = b.count(b.max_v), b.count(b.min_v)
    _check_cap(n_max * n_min, cap)
    min_strats = list(b.strategies(b.min_v))
    maxmin = np.full(b.n, -np.inf)
    upper = np.full((len(min_strats), b.n), -np.inf)  # upper[j] = max over sigma vs tau_j
    for smax in b.strategies(b.max_v):
        block = np.stack([b.outcomes(smax, smin) for smin in min_strats])
        maxmin = np.maximum(maxmin, block.min(axis=0))
        upper = np.maximum(upper, block)
    minmax = upper.min(axis=0)
    if not np.array_equal(maxmin, minmax):
        bad = [b.labels[i] for i in np.flatnonzero(maxmin != minmax)]
        raise AssertionError(f"max-min differs from min-max at {bad}")
    return {v: float(maxmin[i]) for i, v in enumerate(b.labels)}


@dataclass
class Verdict:
    ok: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def verify_solution(
    game: Srg,
    sol: Solution,
    mode: str = "strong",
    start=None,
    cap: int = DEFAULT_CAP,
) -> Verdict:
    """Check a strategy pair against every positional deviation of the opponent.

    In ``"weak"`` mode only the guarantees from ``start`` (default
    ``game.start``) with bound ``sol.value[start]`` are checked; in
    ``"strong"`` mode those from every vertex with bound ``sol.value[v]``.
    """
    if mode not in ("weak", "strong"):
        raise ValueError(f"unknown mode {mode!r}")
    b = _Board(game)
    if mode == "weak":
        start = game.start if start is None else start
        if start is None:
            raise ValueError("weak verification needs a start vertex")
        if game.owner[start] is Owner.TERMINAL:
            ok = sol.value.get(start) == game.payoff[start]
            return Verdict(ok, {} if ok else {"vertex": start, "reason": "terminal value differs from payoff"})
        targets = [b.idx[start]]
    else:
        targets = list(range(b.n))

    for t, p in game.payoff.items():
        if t in sol.value and sol.value[t] != p:
            return Verdict(False, {"vertex": t, "reason": "terminal value differs from payoff"})
    fixed = {}
    for verts, choices, who in ((b.max_v, sol.max_choice, "max"), (b.min_v, sol.min_choice, "min")):
        strat = {}
        for v in verts:
            label = b.labels[v]
            e = choices.get(label)
            if e is None or not (0 <= e < len(game.arcs)) or game.arcs[e][0] != label:
                return Verdict(False, {"vertex": label, "player": who, "reason": "missing or invalid move"})
            strat[v] = (e, b.idx[game.arcs[e][1]])
        fixed[who] = strat
    try:
        bound = np.array([float(sol.value[b.labels[v]]) for v in targets])
    except KeyError as exc:
        return Verdict(False, {"vertex": exc.args[0], "reason": "no value given"})

    _check_cap(b.count(b.min_v) + b.count(b.max_v), cap)
    for smin in b.strategies(b.min_v):
        out = b.outcomes(fixed["max"], smin)[targets]
        bad = np.flatnonzero(out < bound)
        if bad.size:
            i = bad[0]
            return Verdict(False, _witness(b, targets[i], "min", smin, out[i], bound[i]))
    for smax in b.strategies(b.max_v):
        out = b.outcomes(smax, fixed["min"])[targets]
        bad = np.flatnonzero(out > bound)
        if bad.size:
            i = bad[0]
            return Verdict(False, _witness(b, targets[i], "max", smax, out[i], bound[i]))
    return Verdict(True)


def _witness(b: _Board, v: int, who: str, strat: dict, outcome: float, bound: float) -> dict:
    # ``player`` is the side whose fixed strategy fails to secure the bound at ``vertex``
    return {
        "vertex": b.labels[v],
        "player": "max" if who == "min" else "min",
        "deviator": who,
        "deviation": {b.labels[u]: e for u, (e, _) in strat.items()},
        "outcome": float(outcome),
        "bound": float(bound),
    }


def bottleneck_widths(net: Network, removed: Iterable[int] = ()) -> dict:
    """Widest-path width to the sink from every vertex, ignoring the ``removed`` arc ids.

    Arcs are added in descending capacity order; a vertex's width is the
    capacity at which it first becomes able to reach the sink.
    """
    removed = set(removed)
    width = {v: 0 for v in net.vertices}
    width[net.sink] = INF
    reached = {net.sink}
    preds: dict = {v: [] for v in net.vertices}
    live = [i for i in range(len(net.arcs)) if i not in removed]
    live.sort(key=lambda i: net.arcs[i][2], reverse=True)
    for i in live:
        u, w, c = net.arcs[i]
        preds[w].append(u)
        if w in reached and u not in reached:
            stack = [u]
            reached.add(u)
            while stack:
                x = stack.pop()
                width[x] = c
                for y in preds[x]:
                    if y not in reached:
                        reached.add(y)
                        stack.append(y)
    return width


def enumerate_widths(net: Network, cap: int = DEFAULT_CAP) -> dict:
    """For each vertex, the least bottleneck width over all budget-feasible removal sets."""
    per_vertex = []
    count = 1
    for v in net.vertices:
        out = net.out_arcs(v)
        k = min(net.k(v), len(out))
        options = [c for r in range(k + 1) for c in itertools.combinations(out, r)]
        per_vertex.append(options)
        count *= len(options)
    if count > cap:
        raise InstanceTooLarge(f"{count} removal sets exceed the cap of {cap}")
    best = {v: INF for v in net.vertices}
    for choice in itertools.product(*per_vertex):
        removed = [e for part in choice for e in part]
        w = bottleneck_widths(net, removed)
        for v in net.vertices:
            if w[v] < best[v]:
                best[v] = w[v]
    return best
