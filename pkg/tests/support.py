"""Shared instances and helpers for the test suite."""
from __future__ import annotations

import functools
import random

from srgames.core import Srg
from srgames.generators import gen_random_network, gen_random_srg


@functools.total_ordering
class Counted:
    """Payoff wrapper that counts order comparisons between two payoffs.

    Comparisons against plain numbers (sign tests such as ``p < 0``) are not
    counted, matching what the ledger is supposed to charge.
    """

    ops = 0

    def __init__(self, v):
        self.v = v

    def _other(self, o):
        if isinstance(o, Counted):
            Counted.ops += 1
            return o.v
        return o

    def __lt__(self, o):
        return self.v < self._other(o)

    def __gt__(self, o):
        return self.v > self._other(o)

    def __eq__(self, o):
        return self.v == (o.v if isinstance(o, Counted) else o)

    def __hash__(self):
        return hash(self.v)

    def __neg__(self):
        return Counted(-self.v)

    def __float__(self):
        return float(self.v)

    def __repr__(self):
        return f"Counted({self.v!r})"


def with_counted_payoffs(game: Srg) -> Srg:
    return Srg(dict(game.owner), {t: Counted(p) for t, p in game.payoff.items()}, game.arcs, game.start)


def small_games(count: int, seed: int = 0, ties: bool = False):
    """Seed-pinned random games with <= 6 non-terminals, <= 5 terminals, out-degree <= 3."""
    rng = random.Random(seed)
    for i in range(count):
        n_max = rng.randint(0, 4)
        n_min = rng.randint(1 if n_max == 0 else 0, 6 - n_max)
        n_term = rng.randint(1, 5)
        distinct = not ties or rng.random() < 0.5
        yield gen_random_srg(
            n_max, n_min, n_term, (1, 3), (-6, 6), seed=rng.randrange(2**31),
            distinct=distinct, acyclic=rng.random() < 0.3,
        )


def positive_games(count: int, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(count):
        n_max = rng.randint(0, 3)
        n_min = rng.randint(1 if n_max == 0 else 0, 5 - n_max)
        yield gen_random_srg(n_max, n_min, rng.randint(1, 4), (1, 3), (1, 9), seed=rng.randrange(2**31))


def small_networks(count: int, seed: int = 0):
    """Seed-pinned networks with <= 6 vertices, <= 8 arcs and budgets <= 2."""
    rng = random.Random(seed)
    for _ in range(count):
        nv = rng.randint(2, 6)
        m = rng.randint(nv, 8)
        yield gen_random_network(nv, m, (0, rng.randint(0, 2)), seed=rng.randrange(2**31))


# Min at v0 can stop at 0 or hand the move to Max, who then takes 2; the value is 0.
# The first listed arc of a (to the worse terminal) is what the weak recovery keeps,
# which is fine from v0 but not optimal for Max at a.
def weak_not_strong_game() -> Srg:
    return Srg.create({"a": ["t1", "t2"]}, {"v0": ["t0", "a"]}, {"t0": 0, "t1": 1, "t2": 2}, start="v0")


# Min can force infinite play from A even though every terminal is decisive.
def forced_cycle_game() -> Srg:
    return Srg.create({"A": ["t", "B"]}, {"B": ["A", "u"]}, {"t": -1, "u": 1}, start="A")


# Both vertices have value 1, but A -> B would cycle and pay 0.
def cycle_trap_game() -> Srg:
    return Srg.create({"A": ["B", "t"], "B": ["A"]}, {}, {"t": 1}, start="A")
