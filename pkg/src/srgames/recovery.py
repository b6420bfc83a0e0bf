"""Strategy recovery from known values."""
from __future__ import annotations

from typing import Mapping

from .core import MAX, MIN, TERM, Owner, Solution, Srg, split_with_arcs
from .errors import InconsistentInputValue, UnknownVertex
from .ledger import ComparisonLedger, ensure
from .retrograde import retrograde, solve_signs, solve_strong_sorted


def _interval_groups(game: Srg, y, ledger: ComparisonLedger) -> tuple[list[list[int]], list[int], int | None]:
    """Bucket the terminals into the intervals cut by min(y, 0) and max(y, 0).

    Returns the non-empty groups in increasing order, their signs, and the
    index of the group holding payoff ``y`` (None if no terminal pays ``y``,
    or if ``y`` is 0).
    """
    g = game.arrays
    lo, hi = (y, 0) if y < 0 else (0, y)
    # interval index: 0 (-inf, lo), 1 {lo}, 2 (lo, hi), 3 {hi}, 4 (hi, inf)
    buckets: list[list[int]] = [[], [], [], [], []]
    less = ledger.less
    for t in g.terminal_indices:
        p = g.payoff[t]
        if less(p, lo):
            b = 0
        elif not less(lo, p):
            b = 1
        elif lo == hi or not less(p, hi):
            b = 3 if not less(hi, p) else 4
        else:
            b = 2
        buckets[b].append(t)
    if lo == hi:
        # y == 0: only three intervals, {0} sits in bucket 1
        signs_of = [-1, 0, 0, 0, 1]
    elif y < 0:
        signs_of = [-1, -1, -1, 0, 1]
    else:
        signs_of = [-1, 0, 1, 1, 1]
    y_bucket = None if y == 0 else (1 if y < 0 else 3)
    groups, signs, y_group = [], [], None
    for b, members in enumerate(buckets):
        if members:
            if b == y_bucket:
                y_group = len(groups)
            groups.append(members)
            signs.append(signs_of[b])
    return groups, signs, y_group


def recover_weak(game: Srg, v0, y, ledger: ComparisonLedger | None = None) -> Solution:
    """A weak solution at ``v0`` from its value ``y``.

    Terminals are merged within each of the (at most five) intervals cut by
    ``min(y, 0)`` and ``max(y, 0)``; the coarse game is solved by retrograde
    analysis and its strategy pair returned.  Values are reported for ``v0``
    and the terminals only.  Comparisons against ``y`` are charged to
    ``ledger``.
    """
    ledger = ensure(ledger)
    g = game.arrays
    if v0 not in g.index:
        raise UnknownVertex(f"{v0!r} is not in the game")
    i0 = g.index[v0]
    if g.kind[i0] == TERM and g.payoff[i0] != y:
        raise InconsistentInputValue(f"terminal {v0!r} pays {g.payoff[i0]!r}, not {y!r}")
    groups, signs, y_group = _interval_groups(game, y, ledger)
    res = retrograde(g.kind, g.tails, g.heads, groups, signs)
    got = res.group_of[i0]
    if y == 0:
        ok = got < 0 or signs[got] == 0
    else:
        ok = y_group is not None and got == y_group
    if not ok:
        raise InconsistentInputValue(f"{y!r} is not the value of {v0!r}")
    value = {v: p for v, p in game.payoff.items()}
    value[v0] = y
    max_choice, min_choice = {}, {}
    for i, v in enumerate(g.labels):
        c = res.choice[i]
        if g.kind[i] == MAX:
            max_choice[v] = c
        elif g.kind[i] == MIN:
            min_choice[v] = c
    return Solution(value, max_choice, min_choice)


def recover_strong(game: Srg, value: Mapping) -> Solution:
    """A strong solution from the full value map.

    Arcs between vertices of different values are discarded; each remaining
    single-value piece is solved by retrograde analysis and the choices are
    combined.
    """
    max_choice, min_choice = {}, {}
    parts = split_with_arcs(game, value)
    # arcs that leave a value class must not improve on the owner's value
    for a, b in game.arcs:
        o = game.owner[a]
        if (o is Owner.MAX and value[b] > value[a]) or (o is Owner.MIN and value[b] < value[a]):
            raise InconsistentInputValue(f"{a!r} can move to {b!r} with value {value[b]!r}, beyond its own {value[a]!r}")
    for sub, arc_ids in parts:
        x = value[next(iter(sub.owner))]
        for t, p in sub.payoff.items():
            if p != x:
                raise InconsistentInputValue(f"terminal {t!r} pays {p!r} but was given value {x!r}")
        outdeg = dict.fromkeys(sub.owner, 0)
        for a, _ in sub.arcs:
            outdeg[a] += 1
        for v, o in sub.owner.items():
            if o is not Owner.TERMINAL and not outdeg[v]:
                raise InconsistentInputValue(f"{v!r} has no move keeping value {x!r}")
        if x == 0:
            signs, sol = solve_signs(sub)
            wrong = [v for v, s in signs.items() if s != 0]
        else:
            # every terminal here pays x, so any order is sorted
            sol = solve_strong_sorted(sub, list(sub.payoff))
            wrong = [v for v, val in sol.value.items() if val != x]
        if wrong:
            raise InconsistentInputValue(f"vertices {wrong[:5]!r} do not have value {x!r}")
        for v, e in sol.max_choice.items():
            max_choice[v] = arc_ids[e]
        for v, e in sol.min_choice.items():
            min_choice[v] = arc_ids[e]
    return Solution(dict(value), max_choice, min_choice)
