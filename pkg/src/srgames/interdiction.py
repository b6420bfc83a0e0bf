"""Widest-path interdiction.

Each vertex ``v`` may delete up to ``k(v)`` of its outgoing arcs; the
interdictor wants every path to the sink to be narrow.  With the arcs
sorted by capacity the problem is solved for all vertices at once by a
Dijkstra-like sweep over a monotone bucket queue; without the sort, the
width of the source is found by repeatedly coarsening the capacities.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import Owner, Srg
from .errors import BadPermutation, MonotonicityError, NonPositivePayoff
from .ledger import ComparisonLedger, ensure
from .network import INF, Network, WidthSolution
from .orderkit import partial_perfect_quicksort, select_median
from .weak import ceil_log2

# arc touches per strong solve are bounded by ARC_TOUCH_FACTOR * (m + n_vertices)
ARC_TOUCH_FACTOR = 4


class MonotoneBucketQueue:
    """Max-priority queue over integer ranks 0..top whose extracted ranks never increase.

    Items pushed at the current rank join the back of its bucket, so ties
    are served first in, first out.  Pushing above the current rank raises
    :class:`MonotonicityError`.
    """

    def __init__(self, top: int, record: bool = False) -> None:
        self._buckets: list[list | None] = [None] * (top + 1)
        self.current = top
        self._pos = 0
        self.trace: list[int] | None = [] if record else None

    def push(self, item, rank: int) -> None:
        if not 0 <= rank <= self.current:
            raise MonotonicityError(f"insert at rank {rank} above current rank {self.current}")
        b = self._buckets[rank]
        if b is None:
            b = self._buckets[rank] = []
        b.append(item)

    def pop(self):
        """Return ``(rank, item)`` of a maximum-rank item, or None when empty."""
        while self.current >= 0:
            b = self._buckets[self.current]
            if b is not None and self._pos < len(b):
                item = b[self._pos]
                self._pos += 1
                if self.trace is not None:
                    if self.trace and self.trace[-1] < self.current:
                        raise MonotonicityError("extracted rank increased")
                    self.trace.append(self.current)
                return self.current, item
            self._buckets[self.current] = None
            self.current -= 1
            self._pos = 0
        return None


@dataclass
class _Sweep:
    width: list[int]  # rank; top + 1 stands for +inf
    removed: list[int]
    used: list[int]
    touches: int
    trace: list[int] | None


def _sweep(
    nv: int,
    tails: Sequence[int],
    heads: Sequence[int],
    ranks: Sequence[int],
    top: int,
    budget: Sequence[int],
    sink: int,
    record: bool = False,
) -> _Sweep:
    """Strong interdiction over integer arc ranks in 0..top (ties allowed)."""
    m = len(tails)
    in_arcs: list[list[int]] = [[] for _ in range(nv)]
    for e in range(m):
        in_arcs[heads[e]].append(e)
    touches = m
    width = [0] * nv
    width[sink] = top + 1
    merged = bytearray(nv)
    merged[sink] = 1
    used = [0] * nv
    removed = []
    q = MonotoneBucketQueue(top, record)
    for e in in_arcs[sink]:
        if not merged[tails[e]] and ranks[e] > 0:
            q.push(e, ranks[e])
    while True:
        nxt = q.pop()
        if nxt is None:
            break
        r, e = nxt
        touches += 1
        v = tails[e]
        if merged[v]:
            continue
        if used[v] < budget[v]:
            used[v] += 1
            removed.append(e)
            continue
        # v cannot avoid width r: fix it and clamp the arcs entering v to r
        merged[v] = 1
        width[v] = r
        for x in in_arcs[v]:
            touches += 1
            if not merged[tails[x]]:
                rx = ranks[x] if ranks[x] < r else r
                if rx > 0:
                    q.push(x, rx)
    return _Sweep(width, removed, used, touches, q.trace)


class _NetArrays:
    def __init__(self, net: Network):
        self.labels = list(net.vertices)
        self.index = {v: i for i, v in enumerate(self.labels)}
        self.tails = [self.index[a] for a, _, _ in net.arcs]
        self.heads = [self.index[b] for _, b, _ in net.arcs]
        self.caps = [c for _, _, c in net.arcs]
        self.budget = [net.k(v) for v in self.labels]
        self.sink = self.index[net.sink]
        self.source = self.index[net.source]


def _solution(a: _NetArrays, sw: _Sweep, value_of_rank: Callable[[int], object]) -> WidthSolution:
    width = {v: value_of_rank(sw.width[i]) for i, v in enumerate(a.labels)}
    removals = {a.labels[i]: u for i, u in enumerate(sw.used) if u}
    return WidthSolution(width, frozenset(sw.removed), removals, sw.trace, sw.touches)


def sorted_arcs(net: Network, ledger: ComparisonLedger | None = None) -> list[int]:
    """Arc ids in ascending ``(capacity, id)`` order, charged to ``ledger``."""
    ledger = ensure(ledger)
    return ledger.sort(range(len(net.arcs)), key=lambda e: (net.arcs[e][2], e))


def solve_strong_sorted_capacities(
    net: Network,
    order: Sequence[int],
    ledger: ComparisonLedger | None = None,
    *,
    record: bool = False,
) -> WidthSolution:
    """Width of every vertex and one removal set, given arcs sorted by capacity.

    Capacities are replaced by their ranks 1..m, so no capacity is compared
    (``ledger`` is left untouched).  With ``record`` the extracted rank
    sequence is kept in ``extracted``.
    """
    m = len(net.arcs)
    order = list(order)
    if len(order) != m or set(order) != set(range(m)):
        raise BadPermutation("order is not a permutation of the arc ids")
    a = _NetArrays(net)
    ranks = [0] * m
    for r, e in enumerate(order, 1):
        ranks[e] = r

    def value_of_rank(r: int):
        if r == 0:
            return 0
        if r > m:
            return INF
        return a.caps[order[r - 1]]

    sw = _sweep(len(a.labels), a.tails, a.heads, ranks, m, a.budget, a.sink, record)
    return _solution(a, sw, value_of_rank)


def solve_strong_capacities(net: Network, ledger: ComparisonLedger | None = None, **kw) -> WidthSolution:
    """Sort the arcs, then :func:`solve_strong_sorted_capacities`."""
    return solve_strong_sorted_capacities(net, sorted_arcs(net, ledger), ledger, **kw)


@dataclass
class WeakWidth:
    width: object
    removed: frozenset
    iterations: int
    ledger: ComparisonLedger
    sizes: list[int] = field(default_factory=list)  # |C| entering each round


def _weak(
    net: Network,
    ledger: ComparisonLedger | None,
    keep_going: Callable[[int, int], bool],
    split: Callable[[list, int, ComparisonLedger], list],
) -> WeakWidth:
    ledger = ensure(ledger)
    a = _NetArrays(net)
    m = len(net.arcs)
    if a.source == a.sink:
        return WeakWidth(INF, frozenset(), 0, ledger)
    if m == 0:
        return WeakWidth(0, frozenset(), 0, ledger)
    nv = len(a.labels)
    live = [(a.caps[e], e) for e in range(m)]
    # frozen arcs: -1 means capacity replaced by 0, +1 by +inf
    frozen = [0] * m
    out = WeakWidth(None, frozenset(), 0, ledger)
    while keep_going(len(live), m):
        out.sizes.append(len(live))
        groups = split(live, m, ledger)
        top = len(groups) + 1
        ranks = [0 if f < 0 else top for f in frozen]
        for j, grp in enumerate(groups, 1):
            for _, e in grp:
                ranks[e] = j
        sw = _sweep(nv, a.tails, a.heads, ranks, top, a.budget, a.sink)
        out.iterations += 1
        r = sw.width[a.source]
        if r == 0:
            out.width, out.removed = 0, frozenset(sw.removed)
            return out
        if r >= top:
            raise AssertionError("source width fell outside the live capacities")
        for j, grp in enumerate(groups, 1):
            if j != r:
                for _, e in grp:
                    frozen[e] = -1 if j < r else 1
        live = groups[r - 1]

    # exact finish on the few remaining capacities
    out.sizes.append(len(live))
    ranked = ledger.sort(live)
    top = len(ranked) + 1
    ranks = [0 if f < 0 else top for f in frozen]
    for j, (_, e) in enumerate(ranked, 1):
        ranks[e] = j
    sw = _sweep(nv, a.tails, a.heads, ranks, top, a.budget, a.sink)
    out.iterations += 1
    r = sw.width[a.source]
    if r >= top:
        raise AssertionError("source width fell outside the live capacities")
    out.width = 0 if r == 0 else ranked[r - 1][0]
    out.removed = frozenset(sw.removed)
    return out


def _halve(live, m, ledger):
    _, lo, hi = select_median(live, ledger)
    return [lo, hi] if hi else [lo]


def _logstar_split(live, m, ledger):
    c = len(live)
    depth = max(1, min(-(-m // c) + 1, ceil_log2(c)))
    return partial_perfect_quicksort(live, depth, ledger)


def solve_weak_loglog_capacities(net: Network, ledger: ComparisonLedger | None = None) -> WeakWidth:
    """Width of the source by median halving, finishing with a sort once |C| log|C| <= |E|."""
    return _weak(net, ledger, lambda c, m: c * ceil_log2(c) > m, _halve)


def solve_weak_logstar_capacities(net: Network, ledger: ComparisonLedger | None = None) -> WeakWidth:
    """Width of the source by splitting C into about 2**(|E|/|C|) groups per round."""
    return _weak(net, ledger, lambda c, m: m // c < ceil_log2(c), _logstar_split)


SUPERSINK = "supersink"


def reduce_srg_to_interdiction(game: Srg) -> tuple[Network, dict]:
    """Network whose widths equal the game values, for games with positive payoffs.

    Every terminal gets an arc to a new sink with capacity equal to its
    payoff; all other arcs get a capacity above every payoff.  A Min vertex
    may remove all but one of its arcs, nobody else may remove any.
    """
    for t, p in game.payoff.items():
        if not p > 0:
            raise NonPositivePayoff(f"terminal {t!r} has payoff {p!r}")
    sink = SUPERSINK
    while sink in game.owner:
        sink = "_" + sink
    big = 2 * max(game.payoff.values(), default=0) + 1
    outdeg = dict.fromkeys(game.owner, 0)
    for v, _ in game.arcs:
        outdeg[v] += 1
    arcs = [(a, b, big) for a, b in game.arcs]
    arcs += [(t, sink, p) for t, p in game.payoff.items()]
    budget = {v: outdeg[v] - 1 for v, o in game.owner.items() if o is Owner.MIN and outdeg[v] > 1}
    source = game.start if game.start is not None else next(iter(game.owner))
    vertices = tuple(game.owner) + (sink,)
    return Network(vertices, tuple(arcs), budget, source, sink), {v: v for v in game.owner}
