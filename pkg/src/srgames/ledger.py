"""Comparison accounting.

Every payoff or capacity comparison made by a solver goes through
:meth:`ComparisonLedger.less`, so ``ledger.count`` is exactly the number of
comparisons performed.  Sign tests (``p < 0``) and integer rank arithmetic
are not comparisons and are never charged.
"""
from __future__ import annotations

from typing import Any, Callable, Iterable, TypeVar

T = TypeVar("T")


class ComparisonLedger:
    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def less(self, a: Any, b: Any) -> bool:
        self.count += 1
        return a < b

    def sort(self, items: Iterable[T], key: Callable[[T], Any] | None = None) -> list[T]:
        """Stable comparison sort charged to this ledger.

        Uses the builtin Timsort, which only ever calls ``<``; each call is
        one charged comparison.
        """
        if key is None:
            wrapped = [_Charged(x, x, self) for x in items]
        else:
            wrapped = [_Charged(key(x), x, self) for x in items]
        wrapped.sort()
        return [w.item for w in wrapped]

    def __repr__(self) -> str:
        return f"ComparisonLedger(count={self.count})"


class _Charged:
    __slots__ = ("key", "item", "ledger")

    def __init__(self, key, item, ledger: ComparisonLedger) -> None:
        self.key = key
        self.item = item
        self.ledger = ledger

    def __lt__(self, other: "_Charged") -> bool:
        return self.ledger.less(self.key, other.key)


def ensure(ledger: ComparisonLedger | None) -> ComparisonLedger:
    return ComparisonLedger() if ledger is None else ledger
