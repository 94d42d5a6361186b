from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from hcov.models.multiset import from_counts, multiset, render_counts


class LogMode(str, Enum):
    WORD = "word"
    BAG = "bag"


@dataclass(frozen=True, slots=True)
class History:
    """An event log.

    Word histories store events most-recent-first, so ``e + h`` is literally
    ``(e, *h.events)``. Bag histories store the events as a sorted multiset.
    """

    mode: LogMode
    events: tuple[str, ...] = ()

    @classmethod
    def word(cls, events: Iterable[str] = ()) -> History:
        return cls(LogMode.WORD, tuple(events))

    @classmethod
    def bag(cls, events: Iterable[str] = ()) -> History:
        return cls(LogMode.BAG, multiset(events))

    @classmethod
    def bag_of(cls, counts: Mapping[str, int]) -> History:
        return cls(LogMode.BAG, from_counts(counts))

    @classmethod
    def empty(cls, mode: LogMode) -> History:
        return cls(mode, ())

    def render(self) -> str:
        if self.mode is LogMode.WORD:
            return " ".join(self.events)
        return render_counts(self.events)
