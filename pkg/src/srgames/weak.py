"""Weak solvers: the value of one start vertex with few comparisons.

All three solvers repeat the same round on a game in which every vertex has
a positive value: split the current terminals into ordered groups, solve the
coarse game in which each group is one terminal, keep only the vertices
whose coarse value is the group of the start vertex, and expand that group
again.  They differ in how finely they split and when they hand over to the
sorting method.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import MAX, MIN, TERM, Owner, Solution, Srg, sign_code
from .errors import UnknownVertex
from .ledger import ComparisonLedger, ensure
from .orderkit import partial_perfect_quicksort, select_median
from .recovery import recover_weak
from .retrograde import retrograde, solve_signs_arrays

ALGORITHMS = ("paterson", "loglog", "logstar")


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


@dataclass
class Answer:
    value: object


@dataclass
class PositiveGame:
    game: Srg
    v0: object
    flipped: bool


@dataclass
class WeakRun:
    value: object
    iterations: int
    ledger: ComparisonLedger
    sizes: list[int] = field(default_factory=list)  # terminal count n_i entering each round
    arcs: list[int] = field(default_factory=list)  # arc count m_i entering each round
    flipped: bool = False
    m: int = 0  # arc count of the positive game, used by the log* schedule
    n: int = 0  # terminal count of the positive game
    survivors: list[Srg] | None = None


def preprocess_positive(game: Srg, v0) -> Answer | PositiveGame:
    """Reduce to a game where every vertex has a positive value.

    Signs come from the three-terminal sign game.  A zero (or terminal)
    start vertex is answered directly.  A negative one is handled on the
    negated game.  Vertices of any other sign are deleted along with every
    arc that crosses signs; terminals left without incoming arcs are
    dropped.
    """
    g = game.arrays
    if v0 not in g.index:
        raise UnknownVertex(f"{v0!r} is not in the game")
    i0 = g.index[v0]
    if g.kind[i0] == TERM:
        return Answer(g.payoff[i0])
    vsign, _ = solve_signs_arrays(g)
    s0 = vsign[i0]
    if s0 == 0:
        return Answer(0)
    flipped = s0 < 0
    keep = [vsign[i] == s0 for i in range(len(g.kind))]
    indeg = [0] * len(g.kind)
    arcs = []
    for a, b in zip(g.tails, g.heads):
        if keep[a] and keep[b]:
            arcs.append((g.labels[a], g.labels[b]))
            indeg[b] += 1
    owner, payoff = {}, {}
    for i, v in enumerate(g.labels):
        if not keep[i]:
            continue
        o = game.owner[v]
        if o is Owner.TERMINAL:
            if not indeg[i]:
                continue
            payoff[v] = -g.payoff[i] if flipped else g.payoff[i]
        elif flipped:
            o = o.opponent()
        owner[v] = o
    return PositiveGame(Srg(owner, payoff, tuple(arcs), v0), v0, flipped)


class _Work:
    """Mutable array view of the surviving game."""

    def __init__(self, game: Srg, v0):
        g = game.arrays
        self.labels = list(g.labels)
        self.kind = list(g.kind)
        self.tails = list(g.tails)
        self.heads = list(g.heads)
        self.payoff = list(g.payoff)
        self.tag = list(range(len(g.labels)))  # stable id for the tie-break key
        self.v0 = g.index[v0]

    @property
    def terminals(self) -> list[int]:
        return [i for i, k in enumerate(self.kind) if k == TERM]

    def items(self) -> list[tuple]:
        # (payoff, stable id, current index); the first two are already injective
        return [(self.payoff[i], self.tag[i], i) for i in self.terminals]

    def keep(self, alive: list[bool]) -> None:
        """Restrict to ``alive`` vertices; terminals that lose every incoming arc go too."""
        indeg = [0] * len(self.kind)
        for a, b in zip(self.tails, self.heads):
            if alive[a] and alive[b]:
                indeg[b] += 1
        for i, k in enumerate(self.kind):
            if k == TERM and not indeg[i] and i != self.v0:
                alive[i] = False
        new = [-1] * len(self.kind)
        order = [i for i in range(len(self.kind)) if alive[i]]
        for j, i in enumerate(order):
            new[i] = j
        tails, heads = [], []
        for a, b in zip(self.tails, self.heads):
            if alive[a] and alive[b]:
                tails.append(new[a])
                heads.append(new[b])
        self.tails, self.heads = tails, heads
        for name in ("labels", "kind", "payoff", "tag"):
            old = getattr(self, name)
            setattr(self, name, [old[i] for i in order])
        self.v0 = new[self.v0]

    def round(self, groups: list[list[tuple]]) -> None:
        """Solve the coarse game for ``groups`` and keep the group of the start vertex."""
        index_groups = [[it[2] for it in grp] for grp in groups]
        res = retrograde(self.kind, self.tails, self.heads, index_groups, [1] * len(groups))
        g0 = res.group_of[self.v0]
        if g0 < 0:
            raise AssertionError("start vertex lost its positive value")
        self.keep([x == g0 for x in res.group_of])

    def finish(self, ledger: ComparisonLedger):
        """The sorting method on what is left; returns the start vertex's value."""
        ranked = ledger.sort(self.items())
        res = retrograde(self.kind, self.tails, self.heads, [[it[2]] for it in ranked], [1] * len(ranked))
        g0 = res.group_of[self.v0]
        if g0 < 0:
            raise AssertionError("start vertex lost its positive value")
        return ranked[g0][0]

    def snapshot(self) -> Srg:
        owner = {}
        payoff = {}
        for i, v in enumerate(self.labels):
            owner[v] = (Owner.MAX, Owner.MIN, Owner.TERMINAL)[self.kind[i]]
            if self.kind[i] == TERM:
                payoff[v] = self.payoff[i]
        arcs = tuple((self.labels[a], self.labels[b]) for a, b in zip(self.tails, self.heads))
        return Srg(owner, payoff, arcs, self.labels[self.v0])


def _halve(items, ledger):
    _, lo, hi = select_median(items, ledger)
    return [lo, hi] if hi else [lo]


def logstar_stops(m: int, n_i: int) -> bool:
    """True when n_i / 2**floor(m / n_i) < 1."""
    return m // n_i >= n_i.bit_length()


def logstar_depth(m: int, n_i: int) -> int:
    # levels beyond ceil(log2 n_i) only produce singletons
    return max(1, min(-(-m // n_i) + 1, ceil_log2(n_i)))


def logstar_next(m: int, n_i: int) -> int:
    """Group-size bound ceil(n_i / 2**floor(m / n_i))."""
    k = m // n_i
    return -(-n_i >> k) if k < n_i.bit_length() else 1


def logstar_rounds(m: int, n: int) -> int:
    """Rounds the recurrence n_{i+1} = ceil(n_i / 2**floor(m / n_i)) runs before stopping."""
    rounds = 0
    while n >= 1 and not logstar_stops(m, n):
        n = logstar_next(m, n)
        rounds += 1
    return rounds


def _run(
    game: Srg,
    v0,
    ledger: ComparisonLedger | None,
    keep_going: Callable[[int, int, int], bool],
    split: Callable[[list, int, int, ComparisonLedger], list],
    finish: bool,
    keep_survivors: bool,
) -> WeakRun:
    ledger = ensure(ledger)
    pre = preprocess_positive(game, v0)
    if isinstance(pre, Answer):
        return WeakRun(pre.value, 0, ledger)
    pg = pre.game
    w = _Work(pg, pre.v0)
    n, m = len(pg.payoff), len(pg.arcs)
    run = WeakRun(None, 0, ledger, flipped=pre.flipped, m=m, n=n)
    if keep_survivors:
        run.survivors = []
    while True:
        items = w.items()
        n_i = len(items)
        if not keep_going(n_i, n, m):
            break
        run.sizes.append(n_i)
        run.arcs.append(len(w.tails))
        w.round(split(items, n_i, m, ledger))
        run.iterations += 1
        if keep_survivors:
            run.survivors.append(w.snapshot())
    items = w.items()
    if finish:
        run.sizes.append(len(items))
        run.arcs.append(len(w.tails))
        value = w.finish(ledger)
        run.iterations += 1
    else:
        value = items[0][0]
    run.value = -value if pre.flipped else value
    return run


def solve_weak_paterson(game: Srg, v0=None, ledger: ComparisonLedger | None = None, *, keep_survivors: bool = False) -> WeakRun:
    """Halve the terminals around their median until one is left."""
    v0 = game.start if v0 is None else v0
    return _run(
        game, v0, ledger,
        keep_going=lambda n_i, n, m: n_i > 1,
        split=lambda items, n_i, m, led: _halve(items, led),
        finish=False,
        keep_survivors=keep_survivors,
    )


def solve_weak_loglog(game: Srg, v0=None, ledger: ComparisonLedger | None = None, *, keep_survivors: bool = False) -> WeakRun:
    """Halve until n_i * ceil(log2 n_i) <= n, then sort the rest."""
    v0 = game.start if v0 is None else v0
    return _run(
        game, v0, ledger,
        keep_going=lambda n_i, n, m: n_i * ceil_log2(n_i) > n,
        split=lambda items, n_i, m, led: _halve(items, led),
        finish=True,
        keep_survivors=keep_survivors,
    )


def solve_weak_logstar(game: Srg, v0=None, ledger: ComparisonLedger | None = None, *, keep_survivors: bool = False) -> WeakRun:
    """Split into groups of at most n_i / 2**(m/n_i) until that drops below 1, then sort."""
    v0 = game.start if v0 is None else v0
    return _run(
        game, v0, ledger,
        keep_going=lambda n_i, n, m: not logstar_stops(m, n_i),
        split=lambda items, n_i, m, led: partial_perfect_quicksort(items, logstar_depth(m, n_i), led),
        finish=True,
        keep_survivors=keep_survivors,
    )


SOLVERS = {
    "paterson": solve_weak_paterson,
    "loglog": solve_weak_loglog,
    "logstar": solve_weak_logstar,
}


def solve_weak(game: Srg, v0=None, algo: str = "loglog", ledger: ComparisonLedger | None = None) -> tuple[object, Solution]:
    """Value of ``v0`` by the chosen solver, plus a weak solution recovered from it."""
    v0 = game.start if v0 is None else v0
    if algo not in SOLVERS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    ledger = ensure(ledger)
    if v0 not in game.owner:
        raise UnknownVertex(f"{v0!r} is not in the game")
    if game.owner[v0] is Owner.TERMINAL:
        return game.payoff[v0], Solution({v0: game.payoff[v0]})
    run = SOLVERS[algo](game, v0, ledger)
    return run.value, recover_weak(game, v0, run.value, ledger)
