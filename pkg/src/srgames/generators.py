"""Seed-deterministic instance generators."""
from __future__ import annotations

import random
from typing import Sequence

from .core import Owner, Srg, validate
from .errors import InfeasibleParameters
from .network import Network


def gen_random_srg(
    n_max: int,
    n_min: int,
    n_term: int,
    out_degree: tuple[int, int] = (1, 3),
    payoff_range: tuple[int, int] = (-10, 10),
    seed: int = 0,
    *,
    distinct: bool = True,
    acyclic: bool = False,
    cover_terminals: bool = False,
) -> Srg:
    """Random game with integer payoffs, validated (dense ids, start vertex 0).

    Owners of the non-terminals are shuffled; arc heads are uniform over all
    vertices, or over later vertices when ``acyclic``.  With
    ``cover_terminals`` every terminal is given at least one incoming arc by
    redirecting existing arcs, so none is dropped by validation.
    """
    lo_deg, hi_deg = out_degree
    n_non = n_max + n_min
    if min(n_max, n_min, n_term) < 0 or n_non < 1 or lo_deg < 1 or hi_deg < lo_deg:
        raise InfeasibleParameters("need at least one non-terminal and 1 <= min degree <= max degree")
    if acyclic and n_term < 1:
        raise InfeasibleParameters("an acyclic game needs a terminal")
    lo, hi = payoff_range
    if hi < lo or (distinct and hi - lo + 1 < n_term):
        raise InfeasibleParameters(f"cannot draw {n_term} distinct payoffs from [{lo}, {hi}]")
    rng = random.Random(seed)
    owners = [Owner.MAX] * n_max + [Owner.MIN] * n_min
    rng.shuffle(owners)
    total = n_non + n_term
    owner = {i: owners[i] for i in range(n_non)}
    owner.update({i: Owner.TERMINAL for i in range(n_non, total)})
    if distinct:
        pays = rng.sample(range(lo, hi + 1), n_term)
    else:
        pays = [rng.randint(lo, hi) for _ in range(n_term)]
    payoff = {n_non + j: p for j, p in enumerate(pays)}

    tails, heads = [], []
    for v in range(n_non):
        for _ in range(rng.randint(lo_deg, hi_deg)):
            tails.append(v)
            heads.append(rng.randrange(v + 1, total) if acyclic else rng.randrange(total))
    if cover_terminals:
        # terminals come after every non-terminal, so redirecting keeps the game acyclic
        if len(heads) < n_term:
            raise InfeasibleParameters("not enough arcs to give every terminal an incoming arc")
        indeg = [0] * total
        for h in heads:
            indeg[h] += 1
        for t in range(n_non, total):
            if indeg[t]:
                continue
            for _ in range(64):
                e = rng.randrange(len(heads))
                if heads[e] < n_non or indeg[heads[e]] >= 2:
                    break
            else:
                e = rng.choice([e for e, h in enumerate(heads) if h < n_non or indeg[h] >= 2])
            indeg[heads[e]] -= 1
            heads[e] = t
            indeg[t] += 1
    return validate(Srg(owner, payoff, tuple(zip(tails, heads)), 0))


def batcher_comparators(n: int) -> list[tuple[int, int]]:
    """Comparators (i, j), i < j, of Batcher's odd-even merge sort on n wires.

    Sizes that are not powers of two are padded up and the comparators that
    touch padding are dropped; padding sits at the ends where no comparator
    would move it.
    """
    if n < 2:
        return []
    size = 1 << (n - 1).bit_length()
    fill = size - n
    prefix = fill // 2
    wires = [None] * prefix + list(range(n)) + [None] * (fill - prefix)

    def merge(idx):
        if len(idx) == 2:
            yield idx[0], idx[1]
        elif len(idx) > 2:
            yield from merge(idx[0::2])
            yield from merge(idx[1::2])
            yield from zip(idx[1:-1:2], idx[2::2])

    def sort(idx):
        if len(idx) >= 2:
            mid = len(idx) // 2
            yield from sort(idx[:mid])
            yield from sort(idx[mid:])
            yield from merge(idx)

    return [(a, b) for a, b in sort(wires) if a is not None and b is not None]


def batcher_comparator_count(n: int) -> int:
    """Closed form for n = 2**k: (k*k - k + 4) * 2**(k-2) - 1."""
    k = n.bit_length() - 1
    if n != 1 << k:
        raise ValueError("closed form only holds for powers of two")
    if k == 0:
        return 0
    return ((k * k - k + 4) << k) // 4 - 1


def gen_sorting_network_srg(n: int, payoffs: Sequence) -> tuple[Srg, list]:
    """Acyclic game evaluating Batcher's network on ``payoffs``.

    Terminals 0..n-1 are the inputs.  Each comparator becomes a Min vertex
    (its low output) and a Max vertex (its high output), both with arcs to
    the two current wire values.  Returns the game and the vertex ids on the
    output wires, low to high.
    """
    if n < 2 or len(payoffs) != n:
        raise InfeasibleParameters("need n >= 2 and exactly n payoffs")
    owner: dict = {}
    arcs = []
    wire = list(range(n))
    nxt = n
    for i, j in batcher_comparators(n):
        lo_v, hi_v = nxt, nxt + 1
        nxt += 2
        owner[lo_v] = Owner.MIN
        owner[hi_v] = Owner.MAX
        arcs += [(lo_v, wire[i]), (lo_v, wire[j]), (hi_v, wire[i]), (hi_v, wire[j])]
        wire[i], wire[j] = lo_v, hi_v
    for t in range(n):
        owner[t] = Owner.TERMINAL
    payoff = {t: payoffs[t] for t in range(n)}
    return Srg(owner, payoff, tuple(arcs)), wire


def gen_random_network(
    n_vertices: int,
    m_arcs: int,
    budget_range: tuple[int, int] = (0, 1),
    seed: int = 0,
    *,
    allow_small: bool = False,
) -> Network:
    """Random network on vertices 0..n-1, source 0, sink n-1.

    Capacities are a random permutation of 1..m, hence distinct.  No
    self-loops and no arcs out of the sink are generated.
    """
    if n_vertices < 2 or m_arcs < 1:
        raise InfeasibleParameters("need at least two vertices and one arc")
    if m_arcs < n_vertices and not allow_small:
        raise InfeasibleParameters(f"{m_arcs} arcs < {n_vertices} vertices")
    lo, hi = budget_range
    if lo < 0 or hi < lo:
        raise InfeasibleParameters("bad budget range")
    rng = random.Random(seed)
    sink = n_vertices - 1
    caps = list(range(1, m_arcs + 1))
    rng.shuffle(caps)
    arcs = []
    for c in caps:
        a = rng.randrange(n_vertices - 1)
        b = rng.randrange(n_vertices - 1)
        if b >= a:
            b += 1
        arcs.append((a, b, c))
    budget = {v: rng.randint(lo, hi) for v in range(n_vertices - 1)}
    budget = {v: k for v, k in budget.items() if k}
    return Network(tuple(range(n_vertices)), tuple(arcs), budget, 0, sink)
