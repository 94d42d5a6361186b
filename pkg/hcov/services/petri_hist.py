"""Petri nets whose transitions log events, and automata compiled onto them."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from hcov.errors import NotEnabled
from hcov.models.fact import Verdict
from hcov.models.history import LogMode
from hcov.models.multiset import includes, minus, multiset, union
from hcov.models.petri import HConfig, PetriNetH, Transition
from hcov.services.engine import SymbolicDomain
from hcov.services.history import extend, history_leq, pre_history
from hcov.services.oracle import ForwardSystem
from hcov.services.wqo import multiset_embeds, product_leq

logger = logging.getLogger(__name__)


def config_leq(c1: HConfig, c2: HConfig) -> bool:
    return product_leq(
        (c1.marking, c1.history), (c2.marking, c2.history), (multiset_embeds, history_leq),
    )


def fire(net: PetriNetH, config: HConfig, name: str) -> HConfig:
    t = net.transition(name)
    if not includes(config.marking, t.pre):
        raise NotEnabled(name)
    return HConfig(union(minus(config.marking, t.pre), t.post), extend(t.event, config.history))


def enabled(net: PetriNetH, config: HConfig) -> list[str]:
    return [t.name for t in net.transitions if includes(config.marking, t.pre)]


def pre_transition(net: PetriNetH, target: HConfig, name: str) -> list[HConfig]:
    """Basis of the one-step predecessors of ``target``'s upward closure through ``name``."""
    t = net.transition(name)
    marking = union(t.pre, minus(target.marking, t.post))
    return [HConfig(marking, h) for h in pre_history(target.history, t.event)]


class PetriDomain(SymbolicDomain[HConfig], ForwardSystem[HConfig]):
    def __init__(self, net: PetriNetH) -> None:
        self.net = net

    def predecessors(self, element: HConfig) -> list[tuple[str, HConfig]]:
        return [
            (t.name, p) for t in self.net.transitions for p in pre_transition(self.net, element, t.name)
        ]

    def subsumes(self, general: HConfig, specific: HConfig) -> bool:
        return config_leq(general, specific)

    def is_initial(self, element: HConfig) -> bool:
        return config_leq(element, self.net.initial_config())

    def render_parts(self, element: HConfig) -> tuple[str, str]:
        return element.render_parts()

    def initials(self) -> list[HConfig]:
        return [self.net.initial_config()]

    def rule_names(self) -> list[str]:
        return [t.name for t in self.net.transitions]

    def successors(self, config: HConfig, rule_name: str) -> list[HConfig]:
        try:
            return [fire(self.net, config, rule_name)]
        except NotEnabled:
            return []

    def covers(self, config: HConfig, target: object) -> bool:
        return isinstance(target, HConfig) and config_leq(target, config)

    def render_config(self, config: HConfig) -> str:
        return config.render()


def hcov_petri(
    net: PetriNetH, target: HConfig, max_iterations: Optional[int] = None,
) -> Verdict[HConfig]:
    net.check_config(target)
    return PetriDomain(net).saturate([target], max_iterations)


def automaton_net(
    states: Sequence[str],
    transitions: Sequence[tuple[str, str, str, str]],
    initial: str,
    log_mode: LogMode = LogMode.WORD,
    events: Sequence[str] = (),
) -> PetriNetH:
    """One place per state and a single token; ``(name, source, destination, event)`` per move."""
    return PetriNetH(
        places=tuple(states),
        transitions=tuple(
            Transition(name, (source,), (destination,), event)
            for name, source, destination, event in transitions
        ),
        initial=multiset((initial,)),
        log_mode=log_mode,
        events=tuple(events),
    )
