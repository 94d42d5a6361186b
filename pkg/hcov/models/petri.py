from __future__ import annotations

from dataclasses import dataclass

from hcov.errors import ModelError
from hcov.models.history import History, LogMode
from hcov.models.multiset import Multiset


@dataclass(frozen=True, slots=True)
class Transition:
    name: str
    pre: Multiset
    post: Multiset
    event: str


@dataclass(frozen=True, slots=True)
class HConfig:
    """A marking together with the log of the run that produced it."""

    marking: Multiset
    history: History

    def render_parts(self) -> tuple[str, str]:
        places = ",".join(self.marking)
        return f"[{places}]", "{" + self.history.render() + "}"

    def render(self) -> str:
        places = ",".join(self.marking)
        return f"[{places}] [{self.history.render()}]"


@dataclass(frozen=True, slots=True)
class PetriNetH:
    places: tuple[str, ...]
    transitions: tuple[Transition, ...]
    initial: Multiset
    log_mode: LogMode = LogMode.WORD
    events: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        declared = set(self.places)
        if len(declared) != len(self.places):
            raise ModelError("duplicate place declaration")
        names: set[str] = set()
        for t in self.transitions:
            if t.name in names:
                raise ModelError(f"duplicate transition name '{t.name}'")
            names.add(t.name)
            for place in (*t.pre, *t.post):
                if place not in declared:
                    raise ModelError(f"transition '{t.name}' uses undeclared place '{place}'")
            if self.events and t.event not in self.events:
                raise ModelError(f"transition '{t.name}' emits undeclared event '{t.event}'")
        for place in self.initial:
            if place not in declared:
                raise ModelError(f"initial marking uses undeclared place '{place}'")

    @property
    def alphabet(self) -> tuple[str, ...]:
        if self.events:
            return self.events
        return tuple(sorted({t.event for t in self.transitions}))

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise ModelError(f"no transition named '{name}'")

    def initial_config(self) -> HConfig:
        return HConfig(self.initial, History.empty(self.log_mode))

    def check_config(self, config: HConfig) -> None:
        """Reject configurations over undeclared places/events or in the wrong log mode."""
        declared = set(self.places)
        for place in config.marking:
            if place not in declared:
                raise ModelError(f"undeclared place '{place}'")
        if config.history.mode is not self.log_mode:
            raise ModelError(
                f"history is a {config.history.mode.value} but the net logs a {self.log_mode.value}"
            )
        alphabet = set(self.alphabet)
        for event in config.history.events:
            if event not in alphabet:
                raise ModelError(f"undeclared event '{event}'")
