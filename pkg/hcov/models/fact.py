from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, Optional, TypeVar

from hcov.services.wqo import Basis, minimize

E = TypeVar("E")

SEED_RULE = "0"


@dataclass(frozen=True, slots=True)
class Fact(Generic[E]):
    """A retained symbolic element and where it came from.

    ``rule`` is ``None`` and ``parent`` is 0 for seeds.
    """

    iteration: int
    element: E
    id: int
    rule: Optional[str] = None
    parent: int = 0

    @property
    def is_seed(self) -> bool:
        return self.parent == 0


@dataclass(frozen=True)
class Verdict(Generic[E]):
    coverable: bool
    covering_fact: Optional[int]
    facts: tuple[Fact[E], ...]
    iterations: int
    initial_index: Optional[int] = None
    leq: Optional[Callable[[E, E], bool]] = field(default=None, compare=False, repr=False)

    def fact(self, fact_id: int) -> Fact[E]:
        return self.facts[fact_id - 1]

    def basis(self, leq: Optional[Callable[[E, E], bool]] = None) -> Basis[E]:
        """Minimized antichain of the fixpoint's elements."""
        order = leq or self.leq
        if order is None:
            raise ValueError("no subsumption relation to minimize with")
        return minimize(Basis.of((f.element for f in self.facts), order))
