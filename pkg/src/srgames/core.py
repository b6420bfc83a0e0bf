"""Simple recursive games: data model and structural transformations.

A game is a digraph whose vertices belong to Max, to Min, or are terminals
carrying a payoff from Min to Max.  Infinite play pays 0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    DanglingArc,
    GroupNotContiguous,
    GroupNotSignHomogeneous,
    MissingPayoff,
    MissingValue,
    NonTerminalWithoutMoves,
    SameVertex,
    TerminalWithOutgoingArc,
    UnknownVertex,
    WrongRole,
)
from .ledger import ComparisonLedger, ensure

Vertex = Hashable

# integer codes used by the array-based solvers
MAX, MIN, TERM = 0, 1, 2


class Owner(enum.Enum):
    MAX = "max"
    MIN = "min"
    TERMINAL = "terminal"

    @property
    def code(self) -> int:
        return _OWNER_CODE[self]

    def opponent(self) -> "Owner":
        if self is Owner.MAX:
            return Owner.MIN
        if self is Owner.MIN:
            return Owner.MAX
        return self


_OWNER_CODE = {Owner.MAX: MAX, Owner.MIN: MIN, Owner.TERMINAL: TERM}


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, x) -> "Sign":
        if x < 0:
            return cls.NEGATIVE
        if x > 0:
            return cls.POSITIVE
        return cls.ZERO


def sign_code(x) -> int:
    return -1 if x < 0 else (1 if x > 0 else 0)


@dataclass(frozen=True)
class Srg:
    """A simple recursive game.

    ``owner`` is insertion ordered; that order fixes the dense index of each
    vertex and therefore the canonical ``(payoff, index)`` tie-break key of
    terminals.  ``arcs`` may contain parallel arcs and self-loops on
    non-terminals.  Strategies refer to arcs by their position in ``arcs``.
    """

    owner: Mapping[Vertex, Owner]
    payoff: Mapping[Vertex, object]
    arcs: tuple[tuple[Vertex, Vertex], ...]
    start: Vertex | None = None

    @classmethod
    def create(
        cls,
        max_moves: Mapping[Vertex, Sequence[Vertex]] | None = None,
        min_moves: Mapping[Vertex, Sequence[Vertex]] | None = None,
        payoffs: Mapping[Vertex, object] | None = None,
        start: Vertex | None = None,
    ) -> "Srg":
        """Build a game from move lists, e.g. ``create({"a": ["t"]}, {}, {"t": 1})``.

        Vertices are ordered Max first, then Min, then terminals.
        """
        max_moves = max_moves or {}
        min_moves = min_moves or {}
        payoffs = dict(payoffs or {})
        owner: dict[Vertex, Owner] = {}
        arcs = []
        for moves, who in ((max_moves, Owner.MAX), (min_moves, Owner.MIN)):
            for v, heads in moves.items():
                owner[v] = who
                arcs.extend((v, h) for h in heads)
        for t in payoffs:
            owner[t] = Owner.TERMINAL
        return cls(owner, payoffs, tuple(arcs), start)

    @property
    def vertices(self) -> list[Vertex]:
        return list(self.owner)

    @property
    def terminals(self) -> list[Vertex]:
        return [v for v, o in self.owner.items() if o is Owner.TERMINAL]

    @property
    def nonterminals(self) -> list[Vertex]:
        return [v for v, o in self.owner.items() if o is not Owner.TERMINAL]

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def n(self) -> int:
        return len(self.payoff)

    def out_arcs(self, v: Vertex) -> list[int]:
        return [i for i, (a, _) in enumerate(self.arcs) if a == v]

    def in_arcs(self, v: Vertex) -> list[int]:
        return [i for i, (_, b) in enumerate(self.arcs) if b == v]

    def key(self, t: Vertex) -> tuple:
        """Canonical, injective sort key of a terminal."""
        return (self.payoff[t], self.arrays.index[t])

    @cached_property
    def arrays(self) -> "GameArrays":
        return GameArrays.from_game(self)


@dataclass
class GameArrays:
    """Dense integer view of a game used by the solvers."""

    labels: list
    index: dict
    kind: list[int]
    tails: list[int]
    heads: list[int]
    payoff: list

    @classmethod
    def from_game(cls, game: Srg) -> "GameArrays":
        labels = list(game.owner)
        index = {v: i for i, v in enumerate(labels)}
        kind = [_OWNER_CODE[o] for o in game.owner.values()]
        tails, heads = [], []
        for a, b in game.arcs:
            try:
                tails.append(index[a])
                heads.append(index[b])
            except KeyError:
                raise DanglingArc(a, b) from None
        payoff = [None] * len(labels)
        for t, p in game.payoff.items():
            if t not in index:
                raise UnknownVertex(f"payoff given for unknown vertex {t!r}")
            payoff[index[t]] = p
        return cls(labels, index, kind, tails, heads, payoff)

    @property
    def terminal_indices(self) -> list[int]:
        return [i for i, k in enumerate(self.kind) if k == TERM]


@dataclass
class Solution:
    """Values plus one chosen arc (an index into ``game.arcs``) per non-terminal."""

    value: dict
    max_choice: dict = field(default_factory=dict)
    min_choice: dict = field(default_factory=dict)

    def choice(self, v: Vertex) -> int | None:
        if v in self.max_choice:
            return self.max_choice[v]
        return self.min_choice.get(v)

    def successor(self, game: Srg, v: Vertex) -> Vertex:
        return game.arcs[self.choice(v)][1]


def _solution_from_arrays(game: Srg, value_list, choice_list) -> Solution:
    g = game.arrays
    value, max_choice, min_choice = {}, {}, {}
    for i, v in enumerate(g.labels):
        value[v] = value_list[i]
        c = choice_list[i]
        if c is None or c < 0:
            continue
        if g.kind[i] == MAX:
            max_choice[v] = c
        elif g.kind[i] == MIN:
            min_choice[v] = c
    return Solution(value, max_choice, min_choice)


class Forwarding:
    """Representative table for merged vertices, with path compression.

    Merges are recorded in O(1); arcs are rewritten once, through
    :meth:`find`, instead of on every merge.
    """

    def __init__(self) -> None:
        self._parent: dict = {}

    def merge(self, v: Vertex, into: Vertex) -> None:
        root = self.find(into)
        if self.find(v) == root:
            raise SameVertex(f"{v!r} is already merged into {into!r}")
        self._parent[self.find(v)] = root

    def find(self, v: Vertex) -> Vertex:
        root = v
        while root in self._parent:
            root = self._parent[root]
        while v != root:
            nxt = self._parent[v]
            self._parent[v] = root
            v = nxt
        return root

    def __contains__(self, v: Vertex) -> bool:
        return v in self._parent


def normalize(game: Srg) -> tuple[Srg, dict]:
    """Check the structural invariants and renumber densely.

    Returns the normalized game and the old-to-new vertex map.  Terminals
    without incoming arcs are dropped (the start vertex is always kept).
    """
    indeg = {v: 0 for v in game.owner}
    outdeg = {v: 0 for v in game.owner}
    for a, b in game.arcs:
        if a not in game.owner or b not in game.owner:
            raise DanglingArc(a, b)
        outdeg[a] += 1
        indeg[b] += 1
    for v, o in game.owner.items():
        if o is Owner.TERMINAL:
            if v not in game.payoff:
                raise MissingPayoff(f"terminal {v!r} has no payoff")
            if outdeg[v]:
                raise TerminalWithOutgoingArc(v)
        else:
            if v in game.payoff:
                raise WrongRole(f"non-terminal {v!r} carries a payoff")
            if not outdeg[v]:
                raise NonTerminalWithoutMoves(v)
    for t in game.payoff:
        if t not in game.owner:
            raise UnknownVertex(f"payoff given for unknown vertex {t!r}")
    if game.start is not None and game.start not in game.owner:
        raise UnknownVertex(f"start vertex {game.start!r} is not in the game")

    kept = [
        v for v, o in game.owner.items()
        if o is not Owner.TERMINAL or indeg[v] or v == game.start
    ]
    remap = {v: i for i, v in enumerate(kept)}
    owner = {remap[v]: game.owner[v] for v in kept}
    payoff = {remap[v]: game.payoff[v] for v in kept if v in game.payoff}
    arcs = tuple((remap[a], remap[b]) for a, b in game.arcs)
    start = None if game.start is None else remap[game.start]
    return Srg(owner, payoff, arcs, start), remap


def validate(game: Srg) -> Srg:
    return normalize(game)[0]


def _require(game: Srg, v: Vertex, terminal: bool) -> None:
    if v not in game.owner:
        raise UnknownVertex(f"{v!r} is not in the game")
    if (game.owner[v] is Owner.TERMINAL) != terminal:
        role = "a terminal" if terminal else "a non-terminal"
        raise WrongRole(f"{v!r} is not {role}")


def merge_into_terminal(game: Srg, v: Vertex, t: Vertex) -> Srg:
    """Remove the outgoing arcs of non-terminal ``v``, send its incoming arcs to ``t``, drop ``v``.

    Outgoing arcs go first, so a self-loop on ``v`` disappears.
    """
    _require(game, v, terminal=False)
    _require(game, t, terminal=True)
    arcs = tuple((a, t if b == v else b) for a, b in game.arcs if a != v)
    owner = {u: o for u, o in game.owner.items() if u != v}
    start = t if game.start == v else game.start
    return Srg(owner, dict(game.payoff), arcs, start)


def merge_terminals(game: Srg, s: Vertex, t: Vertex) -> Srg:
    """Reconnect the incoming arcs of terminal ``s`` to terminal ``t`` and drop ``s``."""
    _require(game, s, terminal=True)
    _require(game, t, terminal=True)
    if s == t:
        raise SameVertex(f"cannot merge terminal {s!r} with itself")
    arcs = tuple((a, t if b == s else b) for a, b in game.arcs)
    owner = {u: o for u, o in game.owner.items() if u != s}
    payoff = {u: p for u, p in game.payoff.items() if u != s}
    start = t if game.start == s else game.start
    return Srg(owner, payoff, arcs, start)


def coarsen(
    game: Srg,
    groups: Sequence[Iterable[Vertex]],
    ledger: ComparisonLedger | None = None,
) -> tuple[Srg, dict]:
    """Merge each group of terminals into one terminal with an integer rank payoff.

    ``groups`` must partition the terminals into sign-homogeneous blocks
    that are contiguous in payoff order and listed in increasing order.
    Negative groups get payoffs -k..-1, zero groups 0, positive groups 1..j.
    Returns the coarse game and a map from each coarse terminal (the first
    member of its group) to the group.
    """
    ledger = ensure(ledger)
    groups = [tuple(g) for g in groups]
    seen = set()
    for g in groups:
        if not g:
            raise GroupNotContiguous("empty group")
        for t in g:
            _require(game, t, terminal=True)
            if t in seen:
                raise GroupNotContiguous(f"terminal {t!r} appears in two groups")
            seen.add(t)
    missing = [t for t in game.payoff if t not in seen]
    if missing:
        raise GroupNotContiguous(f"terminals {missing!r} are in no group")

    signs = []
    for g in groups:
        s = {sign_code(game.payoff[t]) for t in g}
        if len(s) != 1:
            raise GroupNotSignHomogeneous(f"group {g!r} mixes payoff signs")
        signs.append(s.pop())

    # contiguity: every group lies entirely below the next one
    prev_max = None
    for g in groups:
        lo = hi = game.key(g[0])
        for t in g[1:]:
            k = game.key(t)
            if ledger.less(k, lo):
                lo = k
            elif ledger.less(hi, k):
                hi = k
        if prev_max is not None and not ledger.less(prev_max, lo):
            raise GroupNotContiguous(f"group {g!r} is out of payoff order")
        prev_max = hi

    n_neg = sum(1 for s in signs if s < 0)
    fwd = Forwarding()
    mapping = {}
    coarse_payoff = {}
    pos = 0
    for i, (g, s) in enumerate(zip(groups, signs)):
        rep = g[0]
        for t in g[1:]:
            fwd.merge(t, rep)
        mapping[rep] = g
        if s < 0:
            coarse_payoff[rep] = i - n_neg
        elif s == 0:
            coarse_payoff[rep] = 0
        else:
            pos += 1
            coarse_payoff[rep] = pos

    owner = {v: o for v, o in game.owner.items() if v not in fwd}
    arcs = tuple((a, fwd.find(b)) for a, b in game.arcs)
    start = None if game.start is None else fwd.find(game.start)
    payoff = {t: coarse_payoff[t] for t in owner if t in coarse_payoff}
    return Srg(owner, payoff, arcs, start), mapping


def split_with_arcs(game: Srg, value: Mapping[Vertex, object]) -> list[tuple[Srg, list[int]]]:
    """Like :func:`split_by_value`, also returning each subgame's original arc indices."""
    classes: dict = {}
    for v in game.owner:
        if v not in value:
            raise MissingValue(f"no value for vertex {v!r}")
        classes.setdefault(value[v], []).append(v)
    cls_of = {}
    for k, (x, members) in enumerate(classes.items()):
        for v in members:
            cls_of[v] = k
    arcs_of = [[] for _ in classes]
    for i, (a, b) in enumerate(game.arcs):
        if cls_of[a] == cls_of[b]:
            arcs_of[cls_of[a]].append(i)
    out = []
    for k, members in enumerate(classes.values()):
        owner = {v: game.owner[v] for v in members}
        payoff = {v: game.payoff[v] for v in members if v in game.payoff}
        arcs = tuple(game.arcs[i] for i in arcs_of[k])
        start = game.start if game.start in owner else None
        out.append((Srg(owner, payoff, arcs, start), arcs_of[k]))
    return out


def split_by_value(game: Srg, value: Mapping[Vertex, object]) -> list[Srg]:
    """One subgame per distinct value, keeping only arcs inside a value class."""
    return [g for g, _ in split_with_arcs(game, value)]


def negate(game: Srg) -> Srg:
    """Swap the players and negate every payoff."""
    owner = {v: o.opponent() for v, o in game.owner.items()}
    payoff = {t: -p for t, p in game.payoff.items()}
    return Srg(owner, payoff, tuple(game.arcs), game.start)
