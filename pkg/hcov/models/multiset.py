"""Multisets over symbols, kept as sorted tuples so they hash and compare by value."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

Multiset = tuple[str, ...]


def multiset(items: Iterable[str] = ()) -> Multiset:
    return tuple(sorted(items))


def from_counts(counts: Mapping[str, int]) -> Multiset:
    items: list[str] = []
    for symbol, count in counts.items():
        if count < 0:
            raise ValueError(f"negative count {count} for '{symbol}'")
        items.extend([symbol] * count)
    return multiset(items)


def counts(m: Iterable[str]) -> Counter[str]:
    return Counter(m)


def union(a: Multiset, b: Multiset) -> Multiset:
    return multiset((*a, *b))


def minus(a: Multiset, b: Multiset) -> Multiset:
    """Truncated difference: per symbol max(a - b, 0)."""
    return from_counts(counts(a) - counts(b))


def includes(big: Multiset, small: Multiset) -> bool:
    return counts(small) <= counts(big)


def render_counts(m: Multiset) -> str:
    """``p:2 q:1``, sorted by symbol; the empty multiset renders as the empty string."""
    return " ".join(f"{symbol}:{count}" for symbol, count in sorted(counts(m).items()))
