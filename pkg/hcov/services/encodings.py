"""Model-to-model transforms."""

from __future__ import annotations

import logging
from typing import Optional

from hcov.errors import ModelError
from hcov.models.constraint import IdConstraint
from hcov.models.history import LogMode
from hcov.models.model_file import ModelFile, ModelKind
from hcov.models.msr import Atom, ConstrainedConfig, GroundAtom, MsrRule, MsrSystem, configuration
from hcov.models.petri import HConfig, PetriNetH

logger = logging.getLogger(__name__)

TIME = "time"
EVENT_PREFIX = "h_"
NOW, NEXT = "T", "T2"


def event_predicate(event: str) -> str:
    return f"{EVENT_PREFIX}{event}"


def _time_rule(net: PetriNetH, name: str) -> MsrRule:
    t = net.transition(name)
    lhs = (*(Atom(p) for p in t.pre), Atom(TIME, NOW))
    rhs = (*(Atom(p) for p in t.post), Atom(TIME, NEXT), Atom(event_predicate(t.event), NOW))
    return MsrRule(t.name, lhs, rhs, IdConstraint.build((), (), [(NOW, NEXT, 0)]))


def _time_target(target: HConfig) -> ConstrainedConfig:
    """Places stay nullary; each logged event becomes a stamped ``h_<event>`` atom.

    A word is most-recent-first, so its stamps decrease from left to right.
    """
    places = [Atom(p) for p in target.marking]
    events = list(target.history.events)
    names = [f"X{i + 1}" for i in range(len(events))]
    stamped = [Atom(event_predicate(e), v) for e, v in zip(events, names)]
    gaps = []
    if target.history.mode is LogMode.WORD:
        gaps = [(older, newer, 0) for newer, older in zip(names, names[1:])]
    config = ConstrainedConfig.build((*places, *reversed(stamped)), IdConstraint.build(names, (), gaps))
    if config is None:
        raise ModelError("encoded target is unsatisfiable")
    return config


def encode_time(model: ModelFile, target_name: Optional[str] = None) -> ModelFile:
    """Replace the log of a net by timestamped event atoms.

    Every transition consumes the clock ``time(T)``, produces ``time(T2)``
    with ``T < T2`` and records ``h_<event>(T)``. The initial marking
    starts the clock at 0.
    """
    if model.kind not in (ModelKind.PETRI, ModelKind.AUTOMATON) or model.net is None:
        raise ModelError("only nets and automata can be timestamp-encoded")
    net = model.net
    places = [(p, 0) for p in net.places]
    events = [(event_predicate(e), 1) for e in net.alphabet]
    rules = tuple(_time_rule(net, t.name) for t in net.transitions)
    initial = configuration((*(GroundAtom(p) for p in net.initial), GroundAtom(TIME, 0)))
    system = MsrSystem(tuple(places) + ((TIME, 1),) + tuple(events), rules, (initial,))

    names = [target_name] if target_name is not None else model.target_names
    targets = tuple((name, _time_target(model.target(name))) for name in names)
    expectations = tuple((n, c) for n, c in model.expectations if n in names)
    logger.info("Encoded %d transition(s) and %d target(s) with timestamps", len(rules), len(targets))
    return ModelFile(ModelKind.MSR, msr=system, targets=targets, expectations=expectations)
