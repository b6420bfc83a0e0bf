"""Generalized retrograde analysis.

Given the terminals in payoff order, the most negative terminal is resolved
first: a Max vertex never needs an arc into it while it has another move, and
every other vertex with an arc into it has found its optimal move and is
merged into it.  The most positive terminal is handled symmetrically.  What
is left when only zero payoffs remain has value 0.

The core works on *groups* of terminals so that coarse games (merged
terminals) can be solved without rebuilding the graph: processing a group is
exactly processing the terminal obtained by merging its members.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

from .core import MAX, MIN, TERM, GameArrays, Sign, Solution, Srg, _solution_from_arrays, sign_code
from .errors import BadPermutation
from .ledger import ComparisonLedger, ensure

# arc touches per solve are bounded by ARC_TOUCH_FACTOR * (m + n_vertices)
ARC_TOUCH_FACTOR = 4


@dataclass
class RetroResult:
    group_of: list[int]  # index of the group that decided each vertex, -1 for value 0
    choice: list[int]  # chosen arc per non-terminal, -1 for terminals
    touches: int


def retrograde(
    kind: Sequence[int],
    tails: Sequence[int],
    heads: Sequence[int],
    groups: Sequence[Sequence[int]],
    signs: Sequence[int],
) -> RetroResult:
    """Strongly solve a game whose terminal groups are listed in increasing order.

    ``signs[i]`` is the sign of every payoff in ``groups[i]``.  No payoff is
    ever compared; only the group order and the signs are used.
    """
    nv = len(kind)
    m = len(tails)
    in_arcs: list[list[int]] = [[] for _ in range(nv)]
    outdeg = [0] * nv
    for e in range(m):
        in_arcs[heads[e]].append(e)
        outdeg[tails[e]] += 1
    touches = m
    group_of = [-1] * nv
    choice = [-1] * nv
    deleted = bytearray(m)
    decided = bytearray(nv)

    def resolve(g: int, stubborn: int) -> int:
        # ``stubborn`` is the player who avoids this extreme while it has a choice
        work = deque()
        for t in groups[g]:
            decided[t] = 1
            group_of[t] = g
            work.extend(in_arcs[t])
        count = 0
        while work:
            e = work.popleft()
            count += 1
            u = tails[e]
            if decided[u] or deleted[e]:
                continue
            if kind[u] == stubborn and outdeg[u] >= 2:
                deleted[e] = 1
                outdeg[u] -= 1
            else:
                decided[u] = 1
                group_of[u] = g
                choice[u] = e
                work.extend(in_arcs[u])
        return count

    lo, hi = 0, len(groups) - 1
    while lo <= hi and signs[lo] < 0:
        touches += resolve(lo, MAX)
        lo += 1
    while hi >= lo and signs[hi] > 0:
        touches += resolve(hi, MIN)
        hi -= 1

    # everything left has value 0 and every surviving move is optimal
    for e in range(m):
        touches += 1
        u = tails[e]
        if not decided[u] and not deleted[e] and choice[u] < 0:
            choice[u] = e
    for v in range(nv):
        if kind[v] == TERM:
            choice[v] = -1
    return RetroResult(group_of, choice, touches)


def _terminal_positions(game: Srg, order: Sequence[Hashable]) -> list[int]:
    g = game.arrays
    terms = set(g.terminal_indices)
    try:
        pos = [g.index[t] for t in order]
    except (KeyError, TypeError):
        raise BadPermutation("order names a vertex that is not in the game") from None
    if len(pos) != len(terms) or set(pos) != terms:
        raise BadPermutation("order is not a permutation of the terminals")
    return pos


def solve_strong_sorted(
    game: Srg,
    order: Sequence[Hashable],
    ledger: ComparisonLedger | None = None,
    *,
    stats: dict | None = None,
) -> Solution:
    """Strong solution given the terminals sorted by ascending payoff.

    Makes no payoff comparisons (``ledger`` is accepted for a uniform
    signature and is left untouched).  If ``stats`` is given, the arc-touch
    count is stored under ``"touches"``.
    """
    g = game.arrays
    pos = _terminal_positions(game, order)
    res = retrograde(g.kind, g.tails, g.heads, [[t] for t in pos], [sign_code(g.payoff[t]) for t in pos])
    if stats is not None:
        stats["touches"] = res.touches
    values = [
        g.payoff[i] if g.kind[i] == TERM else (g.payoff[pos[res.group_of[i]]] if res.group_of[i] >= 0 else 0)
        for i in range(len(g.kind))
    ]
    return _solution_from_arrays(game, values, res.choice)


# declared bound for the comparison sort used by the sorting method: count <= SORT_FACTOR * n * log2(n)
SORT_FACTOR = 2


def sorted_terminals(game: Srg, ledger: ComparisonLedger | None = None) -> list:
    """Terminals of ``game`` in canonical ascending order, charged to ``ledger``."""
    ledger = ensure(ledger)
    g = game.arrays
    terms = g.terminal_indices
    ranked = ledger.sort(terms, key=lambda i: (g.payoff[i], i))
    return [g.labels[i] for i in ranked]


def sorting_method(game: Srg, ledger: ComparisonLedger | None = None, *, stats: dict | None = None) -> Solution:
    """Sort the payoffs, then solve with :func:`solve_strong_sorted`."""
    ledger = ensure(ledger)
    return solve_strong_sorted(game, sorted_terminals(game, ledger), ledger, stats=stats)


def sign_groups(g: GameArrays) -> tuple[list[list[int]], list[int]]:
    neg, zero, pos = [], [], []
    for i in g.terminal_indices:
        s = sign_code(g.payoff[i])
        (neg if s < 0 else pos if s > 0 else zero).append(i)
    groups, signs = [], []
    for grp, s in ((neg, -1), (zero, 0), (pos, 1)):
        if grp:
            groups.append(grp)
            signs.append(s)
    return groups, signs


def solve_signs_arrays(g: GameArrays) -> tuple[list[int], RetroResult]:
    groups, signs = sign_groups(g)
    res = retrograde(g.kind, g.tails, g.heads, groups, signs)
    vsign = [signs[k] if k >= 0 else 0 for k in res.group_of]
    return vsign, res


def solve_signs(game: Srg) -> tuple[dict, Solution]:
    """Sign of every vertex's value, with a strategy pair optimal for the win/lose/draw game.

    All negative terminals are merged into one, all positive ones into
    another, and the resulting game of at most three terminals is solved by
    retrograde analysis.  Only sign tests are made, never comparisons.
    """
    g = game.arrays
    vsign, res = solve_signs_arrays(g)
    signs = {v: Sign(s) for v, s in zip(g.labels, vsign)}
    sol = _solution_from_arrays(game, vsign, res.choice)
    return signs, sol
