import random

import pytest
from hypothesis import given, settings, strategies as st

from srgames.errors import EmptyInput
from srgames.ledger import ComparisonLedger
from srgames.orderkit import C_SEL, partial_perfect_quicksort, select_median


def test_singleton():
    assert select_median([5]) == (5, [5], [])


def test_three_items():
    pivot, lo, hi = select_median([3, 1, 2])
    assert pivot == 2 and sorted(lo) == [1, 2] and hi == [3]


def test_empty_input():
    with pytest.raises(EmptyInput):
        select_median([])
    with pytest.raises(EmptyInput):
        partial_perfect_quicksort([], 2)


def test_bad_depth():
    with pytest.raises(ValueError):
        partial_perfect_quicksort([1, 2], 0)


def test_large_random_input_against_sort():
    rng = random.Random(0)
    keys = [(rng.random(), i) for i in range(10**5)]
    ledger = ComparisonLedger()
    pivot, lo, hi = select_median(keys, ledger)
    assert pivot == sorted(keys)[(len(keys) - 1) // 2]
    assert ledger.count <= C_SEL * len(keys)
    assert max(lo) == pivot and min(hi) > pivot


@pytest.mark.parametrize("shape", ["sorted", "reversed", "organ", "random"])
def test_select_budget_on_adversarial_orders(shape):
    n = 5000
    xs = list(range(n))
    if shape == "reversed":
        xs.reverse()
    elif shape == "organ":
        xs = xs[::2] + xs[1::2][::-1]
    elif shape == "random":
        random.Random(1).shuffle(xs)
    ledger = ComparisonLedger()
    pivot, lo, hi = select_median(xs, ledger)
    assert pivot == (n - 1) // 2
    assert ledger.count <= C_SEL * n


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=200, unique=True))
def test_select_properties(xs):
    ledger = ComparisonLedger()
    pivot, lo, hi = select_median(xs, ledger)
    assert pivot == sorted(xs)[(len(xs) - 1) // 2]
    assert sorted(lo + hi) == sorted(xs)
    assert len(lo) - len(hi) in (0, 1)
    assert all(x <= pivot for x in lo) and all(x > pivot for x in hi)
    assert ledger.count <= C_SEL * len(xs)


def test_select_is_deterministic():
    xs = [(x * 7919) % 1009 for x in range(600)]
    assert select_median(xs) == select_median(list(xs))


def test_partial_quicksort_five_payoffs():
    groups = partial_perfect_quicksort([-4, -1, 2, 3, 5], 1)
    assert [sorted(g) for g in groups] == [[-4, -1, 2], [3, 5]]


def test_partial_quicksort_full_depth_is_a_sort():
    xs = random.Random(3).sample(range(1000), 37)
    groups = partial_perfect_quicksort(xs, 6)
    assert all(len(g) == 1 for g in groups)
    assert [g[0] for g in groups] == sorted(xs)


def test_partial_quicksort_quantiles():
    rng = random.Random(2)
    keys = [(rng.random(), i) for i in range(10**4)]
    ledger = ComparisonLedger()
    groups = partial_perfect_quicksort(keys, 3, ledger)
    assert len(groups) == 8
    ordered = sorted(keys)
    pos = 0
    for g in groups:
        assert sorted(g) == ordered[pos:pos + len(g)]
        pos += len(g)
    assert ledger.count <= C_SEL * len(keys) * 3


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=300, unique=True), st.integers(1, 10))
def test_partial_quicksort_properties(xs, depth):
    ledger = ComparisonLedger()
    groups = partial_perfect_quicksort(xs, depth, ledger)
    assert len(groups) <= 2**depth
    assert sorted(x for g in groups for x in g) == sorted(xs)
    bound = -(-len(xs) // 2**depth)
    assert all(0 < len(g) <= bound for g in groups)
    for a, b in zip(groups, groups[1:]):
        assert max(a) < min(b)
    assert ledger.count <= C_SEL * len(xs) * depth
