"""Deterministic selection and partitioning with counted comparisons.

Items are keys with a total, injective order (the solvers use
``(payoff, id)`` pairs).  Every comparison goes through the ledger.
"""
from __future__ import annotations

from typing import Sequence, TypeVar

from .errors import EmptyInput
from .ledger import ComparisonLedger, ensure

K = TypeVar("K")

# select_median makes at most C_SEL * len(items) comparisons
C_SEL = 24

_SMALL = 5


def _insertion_sort(items: list, less) -> list:
    out = []
    for x in items:
        j = len(out)
        while j > 0 and less(x, out[j - 1]):
            j -= 1
        out.insert(j, x)
    return out


def _median_of_five(a, b, c, d, e, less):
    """Lower median of five distinct keys in six comparisons."""
    if less(b, a):
        a, b = b, a
    if less(d, c):
        c, d = d, c
    # the smaller of the two pair minima is below three others: not the median
    if less(c, a):
        a, b, c, d = c, d, a, b
    # drop a; the median is the second smallest of b, c, d, e (with c < d)
    if less(e, b):
        b, e = e, b
    if less(b, c):
        return e if less(e, c) else c
    return b if less(b, d) else d


def _select(items: list, k: int, less) -> tuple:
    """Element of rank ``k`` with the elements below and above it."""
    below: list = []
    above: list = []
    while True:
        n = len(items)
        if n <= _SMALL:
            srt = _insertion_sort(items, less)
            below.extend(srt[:k])
            above.extend(srt[k + 1:])
            return srt[k], below, above
        medians = []
        full = n - n % 5
        for i in range(0, full, 5):
            medians.append(_median_of_five(*items[i:i + 5], less))
        if full < n:
            tail = _insertion_sort(items[full:], less)
            medians.append(tail[(len(tail) - 1) // 2])
        pivot = _select(medians, (len(medians) - 1) // 2, less)[0]
        lo, hi = [], []
        skipped = False
        for x in items:
            if not skipped and x is pivot:
                skipped = True
                continue
            (lo if less(x, pivot) else hi).append(x)
        if k < len(lo):
            above.append(pivot)
            above.extend(hi)
            items = lo
        elif k == len(lo):
            below.extend(lo)
            above.extend(hi)
            return pivot, below, above
        else:
            below.extend(lo)
            below.append(pivot)
            k -= len(lo) + 1
            items = hi


def select_median(items: Sequence[K], ledger: ComparisonLedger | None = None) -> tuple[K, list[K], list[K]]:
    """Lower median by median-of-medians, and the two halves around it.

    The pivot goes in the lower half, so the lower half has ``ceil(n/2)``
    items and the upper half ``floor(n/2)``.
    """
    if not items:
        raise EmptyInput("cannot select from an empty list")
    ledger = ensure(ledger)
    n = len(items)
    pivot, below, above = _select(list(items), (n - 1) // 2, ledger.less)
    below.append(pivot)
    return pivot, below, above


def partial_perfect_quicksort(
    items: Sequence[K], depth: int, ledger: ComparisonLedger | None = None
) -> list[list[K]]:
    """Split around medians ``depth`` levels deep.

    Returns at most ``2**depth`` non-empty groups in increasing order, each
    of size at most ``ceil(n / 2**depth)``.  Order inside a group is
    unspecified.
    """
    if not items:
        raise EmptyInput("cannot partition an empty list")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    ledger = ensure(ledger)
    groups = [list(items)]
    for _ in range(depth):
        if all(len(g) <= 1 for g in groups):
            break
        nxt = []
        for g in groups:
            if len(g) <= 1:
                nxt.append(g)
                continue
            _, lo, hi = select_median(g, ledger)
            nxt.append(lo)
            nxt.append(hi)
        groups = nxt
    return groups
