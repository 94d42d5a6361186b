from __future__ import annotations

from hcov.errors import ModeMismatch
from hcov.models.history import History, LogMode
from hcov.models.multiset import includes, minus, multiset
from hcov.services.wqo import Basis, word_embeds


def extend(event: str, history: History) -> History:
    """``event + history``: prepend to a word, add one occurrence to a bag."""
    if history.mode is LogMode.WORD:
        return History(LogMode.WORD, (event, *history.events))
    return History(LogMode.BAG, multiset((event, *history.events)))


def history_leq(h1: History, h2: History) -> bool:
    if h1.mode is not h2.mode:
        raise ModeMismatch(f"cannot compare a {h1.mode.value} history with a {h2.mode.value} history")
    if h1.mode is LogMode.WORD:
        return word_embeds(h1.events, h2.events)
    return includes(h2.events, h1.events)


def pre_history(target: History, emitted: str) -> Basis[History]:
    """Minimal basis of ``{h : target <= emitted + h}``."""
    if target.mode is LogMode.WORD:
        events = target.events
        if not events or events[0] == emitted:
            return Basis((History(LogMode.WORD, events[1:]),), history_leq)
        return Basis((target,), history_leq)
    return Basis((History(LogMode.BAG, minus(target.events, (emitted,))),), history_leq)
