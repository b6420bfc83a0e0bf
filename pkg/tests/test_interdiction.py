import math
import random

import pytest

from srgames.core import Srg
from srgames.errors import BadPermutation, MonotonicityError, NonPositivePayoff
from srgames.generators import gen_random_network
from srgames.interdiction import (
    ARC_TOUCH_FACTOR,
    SUPERSINK,
    MonotoneBucketQueue,
    reduce_srg_to_interdiction,
    solve_strong_capacities,
    solve_strong_sorted_capacities,
    solve_weak_logstar_capacities,
    solve_weak_loglog_capacities,
    sorted_arcs,
)
from srgames.ledger import ComparisonLedger
from srgames.network import INF, Network, validate_network
from srgames.oracle import bottleneck_widths, enumerate_values, enumerate_widths
from srgames.orderkit import C_SEL
from srgames.retrograde import sorting_method
from srgames.weak import ceil_log2

from support import positive_games, small_networks


def net(arcs, budget=None, source="s", sink="t"):
    verts = []
    for a, b, _ in arcs:
        for v in (a, b):
            if v not in verts:
                verts.append(v)
    for v in (source, sink):
        if v not in verts:
            verts.append(v)
    return Network(tuple(verts), tuple(arcs), budget or {}, source, sink)


def test_single_arc_no_budget():
    sol = solve_strong_capacities(net([("s", "t", 5)]))
    assert sol.width["s"] == 5 and sol.width["t"] == INF and sol.removed == frozenset()


def test_two_parallel_arcs_one_removal():
    n = net([("s", "t", 5), ("s", "t", 3)], {"s": 1})
    sol = solve_strong_capacities(n)
    assert sol.width["s"] == 3 and sol.removed == {0}
    assert enumerate_widths(n)["s"] == 3


def test_removal_at_intermediate_vertex():
    n = net([("s", "a", 10), ("a", "t", 4), ("a", "t", 6)], {"a": 1})
    sol = solve_strong_capacities(n)
    assert sol.removed == {2}
    assert sol.width["a"] == 4 and sol.width["s"] == 4
    assert enumerate_widths(n) == sol.width


def test_source_equals_sink():
    n = Network(("s",), (), {}, "s", "s")
    assert solve_weak_loglog_capacities(n).width == INF
    assert solve_strong_capacities(n).width["s"] == INF


def test_bad_permutation():
    n = net([("s", "t", 5), ("s", "t", 3)])
    with pytest.raises(BadPermutation):
        solve_strong_sorted_capacities(n, [0])
    with pytest.raises(BadPermutation):
        solve_strong_sorted_capacities(n, [0, 0])


def test_bucket_queue_rejects_rank_above_current():
    q = MonotoneBucketQueue(5, record=True)
    q.push("a", 5)
    q.push("b", 3)
    assert q.pop() == (5, "a")
    assert q.pop() == (3, "b")
    with pytest.raises(MonotonicityError):
        q.push("c", 4)
    q.push("d", 3)
    q.push("e", 3)
    assert [q.pop(), q.pop(), q.pop()] == [(3, "d"), (3, "e"), None]
    assert q.trace == [5, 3, 3, 3]


@pytest.mark.parametrize("seed", range(100))
def test_strong_oracle_equivalence_and_certificate(seed):
    n = next(small_networks(1, 100 + seed))
    ledger = ComparisonLedger()
    order = sorted_arcs(n)
    sol = solve_strong_sorted_capacities(n, order, ledger, record=True)
    assert ledger.count == 0
    assert sol.width == enumerate_widths(n)
    for v, used in sol.removals.items():
        assert used <= n.k(v)
    assert sum(sol.removals.values()) == len(sol.removed)
    assert all(n.arcs[e][0] in sol.removals for e in sol.removed)
    assert bottleneck_widths(n, sol.removed) == sol.width
    assert all(a >= b for a, b in zip(sol.extracted, sol.extracted[1:]))


@pytest.mark.filterwarnings("ignore:network has")
def test_ties_in_capacities():
    rng = random.Random(3)
    for _ in range(150):
        nv = rng.randint(2, 5)
        m = rng.randint(nv, 8)
        arcs = []
        for _ in range(m):
            a = rng.randrange(nv - 1)
            b = rng.randrange(nv)
            arcs.append((a, b, rng.randint(1, 3)))
        n = validate_network(Network(tuple(range(nv)), tuple(arcs), {v: rng.randint(0, 2) for v in range(nv)}, 0, nv - 1))
        sol = solve_strong_capacities(n)
        assert sol.width == enumerate_widths(n)
        assert bottleneck_widths(n, sol.removed) == sol.width
        for solver in (solve_weak_loglog_capacities, solve_weak_logstar_capacities):
            assert solver(n).width == sol.width[0]


def test_arc_touches_are_linear():
    for m in (1000, 10000):
        n = gen_random_network(m // 4, m, (0, 2), seed=m)
        sol = solve_strong_capacities(n)
        assert sol.touches <= ARC_TOUCH_FACTOR * (m + len(n.vertices))


@pytest.mark.parametrize("seed", range(60))
def test_weak_solvers_on_small_networks(seed):
    n = next(small_networks(1, 700 + seed))
    strong = solve_strong_capacities(n)
    for solver in (solve_weak_loglog_capacities, solve_weak_logstar_capacities):
        run = solver(n)
        assert run.width == strong.width[n.source]
        # the returned removal set certifies the width at the source
        assert bottleneck_widths(n, run.removed)[n.source] == run.width
        used = {}
        for e in run.removed:
            used[n.arcs[e][0]] = used.get(n.arcs[e][0], 0) + 1
        assert all(c <= n.k(v) for v, c in used.items())


def test_weak_solver_zero_width():
    n = net([("s", "t", 5), ("s", "a", 2), ("a", "t", 9)], {"s": 2})
    for solver in (solve_weak_loglog_capacities, solve_weak_logstar_capacities):
        assert solver(n).width == 0


def test_tiny_network_single_round_then_sort():
    n = gen_random_network(5, 8, (0, 2), seed=7)
    run = solve_weak_logstar_capacities(n)
    assert run.iterations <= 2
    assert run.width == enumerate_widths(n)[n.source]


def test_weak_loglog_on_larger_networks():
    for i, m in enumerate((2**12, 2**14)):
        n = gen_random_network(m // 8, m, (0, 1), seed=i)
        strong = solve_strong_capacities(n)
        ledger = ComparisonLedger()
        run = solve_weak_loglog_capacities(n, ledger)
        assert run.width == strong.width[n.source]
        assert ledger.count <= (2 * C_SEL + 2) * m
        assert run.iterations <= ceil_log2(ceil_log2(m)) + 2
        assert solve_weak_logstar_capacities(n).width == strong.width[n.source]


def test_reduction_of_min_vertex():
    g = Srg.create({}, {"m": ["t1", "t2"]}, {"t1": 2, "t2": 5}, start="m")
    n, vmap = reduce_srg_to_interdiction(g)
    assert n.sink == SUPERSINK
    assert (("t1", SUPERSINK, 2) in n.arcs) and (("t2", SUPERSINK, 5) in n.arcs)
    assert all(c > 5 for a, _, c in n.arcs if a == "m")
    assert n.k("m") == 1
    assert solve_strong_capacities(n).width["m"] == 2 == enumerate_widths(n)["m"]


def test_reduction_of_max_vertex():
    g = Srg.create({"x": ["t"]}, {}, {"t": 7}, start="x")
    n, _ = reduce_srg_to_interdiction(g)
    assert n.k("x") == 0
    assert solve_strong_capacities(n).width["x"] == 7


def test_reduction_requires_positive_payoffs():
    with pytest.raises(NonPositivePayoff):
        reduce_srg_to_interdiction(Srg.create({"x": ["t"]}, {}, {"t": 0}))


@pytest.mark.parametrize("seed", range(40))
def test_reduction_soundness(seed):
    game = next(positive_games(1, 600 + seed))
    n, vmap = reduce_srg_to_interdiction(game)
    width = solve_strong_capacities(n).width
    values = sorting_method(game).value
    for v, w in vmap.items():
        assert width[w] == values[v]


def test_validate_network_drops_loops_and_sink_arcs():
    n = net([("s", "s", 3), ("t", "s", 4), ("s", "t", 2)])
    with pytest.warns(UserWarning):
        v = validate_network(n)
    assert v.arcs == (("s", "t", 2),)
