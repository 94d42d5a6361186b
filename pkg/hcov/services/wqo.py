"""Quasi-order combinators and finite bases of upward-closed sets."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Generic, Hashable, Iterable, Sequence, TypeVar

import networkx as nx
from networkx.algorithms import bipartite

T = TypeVar("T")
Leq = Callable[[T, T], bool]


class ElemOrder(ABC):
    """Order on the elements of multisets and words."""

    @abstractmethod
    def leq(self, a: Hashable, b: Hashable) -> bool: ...


@dataclass(frozen=True, slots=True)
class FiniteEquality(ElemOrder):
    """Equality on a finite alphabet; multisets compare by counts."""

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return a == b


EQUALITY = FiniteEquality()


def word_embeds(u: Sequence[Hashable], v: Sequence[Hashable]) -> bool:
    """Subsequence test by greedy leftmost matching."""
    if len(u) > len(v):
        return False
    pos = 0
    for letter in v:
        if pos == len(u):
            break
        if u[pos] == letter:
            pos += 1
    return pos == len(u)


def multiset_embeds(
    m1: Iterable[Hashable], m2: Iterable[Hashable], order: ElemOrder = EQUALITY,
) -> bool:
    """Injective map from ``m1`` into ``m2`` with every image above its source."""
    small = list(m1)
    big = list(m2)
    if len(small) > len(big):
        return False
    if isinstance(order, FiniteEquality):
        return Counter(small) <= Counter(big)
    if not small:
        return True

    graph = nx.Graph()
    left = [("l", i) for i in range(len(small))]
    right = [("r", j) for j in range(len(big))]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from(right, bipartite=1)
    for i, a in enumerate(small):
        for j, b in enumerate(big):
            if order.leq(a, b):
                graph.add_edge(("l", i), ("r", j))
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    matched = sum(1 for node in left if node in matching)
    return matched == len(small)


def product_leq(
    pair1: tuple[object, object],
    pair2: tuple[object, object],
    orders: tuple[Leq, Leq],
) -> bool:
    first, second = orders
    return first(pair1[0], pair2[0]) and second(pair1[1], pair2[1])


@dataclass(frozen=True)
class Basis(Generic[T]):
    """Finite generator of an upward-closed set under ``leq``."""

    elements: tuple[T, ...]
    leq: Leq

    @classmethod
    def of(cls, elements: Iterable[T], leq: Leq) -> Basis[T]:
        return cls(tuple(elements), leq)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def minimize_elements(elements: Iterable[T], leq: Leq) -> list[T]:
    """Antichain of the same upward closure, earlier elements winning ties."""
    kept: list[T] = []
    for x in elements:
        if any(leq(k, x) for k in kept):
            continue
        kept = [k for k in kept if not leq(x, k)]
        kept.append(x)
    return kept


def minimize(basis: Basis[T]) -> Basis[T]:
    return Basis(tuple(minimize_elements(basis.elements, basis.leq)), basis.leq)


def basis_member(x: T, basis: Basis[T]) -> bool:
    return any(basis.leq(b, x) for b in basis.elements)
