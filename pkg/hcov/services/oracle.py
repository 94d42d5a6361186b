"""Bounded forward exploration and trace replay."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import Generic, Hashable, Optional, Sequence, TypeVar

from hcov.errors import ModelError, ReplayStuck

logger = logging.getLogger(__name__)

C = TypeVar("C", bound=Hashable)


class ForwardSystem(ABC, Generic[C]):
    """Concrete semantics of a model, as seen by the oracle."""

    @abstractmethod
    def initials(self) -> list[C]: ...

    @abstractmethod
    def rule_names(self) -> list[str]: ...

    @abstractmethod
    def successors(self, config: C, rule_name: str) -> list[C]:
        """All successors through one rule, in a deterministic order."""
        ...

    def canonical(self, config: C) -> C:
        return config

    @abstractmethod
    def covers(self, config: C, target: object) -> bool: ...

    def render_config(self, config: C) -> str:
        return str(config)


@dataclass
class ExploreResult(Generic[C]):
    visited: set[C] = field(default_factory=set)
    witness: Optional[C] = None
    firing_sequence: Optional[list[str]] = None
    frontier_exhausted: bool = False
    depth_reached: int = 0

    @property
    def found(self) -> bool:
        return self.witness is not None


def explore(
    system: ForwardSystem[C], initial: C, target: object, depth: int,
) -> ExploreResult[C]:
    """Breadth-first search over canonical configurations up to ``depth`` steps."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    start = system.canonical(initial)
    result: ExploreResult[C] = ExploreResult(visited={start})
    if system.covers(start, target):
        result.witness, result.firing_sequence = start, []
        return result

    layer: deque[tuple[C, list[str]]] = deque([(start, [])])
    for level in range(1, depth + 1):
        next_layer: deque[tuple[C, list[str]]] = deque()
        for config, path in layer:
            for name in system.rule_names():
                for successor in system.successors(config, name):
                    successor = system.canonical(successor)
                    if successor in result.visited:
                        continue
                    result.visited.add(successor)
                    sequence = [*path, name]
                    if system.covers(successor, target):
                        result.witness, result.firing_sequence = successor, sequence
                        result.depth_reached = level
                        return result
                    next_layer.append((successor, sequence))
        result.depth_reached = level
        if not next_layer:
            result.frontier_exhausted = True
            return result
        layer = next_layer

    logger.info("Forward exploration reached its horizon of %d step(s)", depth)
    result.frontier_exhausted = not layer
    return result


def explore_all(
    system: ForwardSystem[C], target: object, depth: int,
) -> tuple[int | None, ExploreResult[C]]:
    """Explore from every initial configuration; return the first that yields a witness."""
    last: ExploreResult[C] | None = None
    exhausted = True
    for index, initial in enumerate(system.initials()):
        result = explore(system, initial, target, depth)
        if result.found:
            return index, result
        exhausted = exhausted and result.frontier_exhausted
        last = result
    if last is None:
        raise ModelError("the model declares no initial configuration")
    last.frontier_exhausted = exhausted
    return None, last


def replay(
    system: ForwardSystem[C],
    initial: C,
    steps: Sequence[str],
    target: object | None = None,
) -> C:
    """Fire ``steps`` in order from ``initial``.

    Where a step has several instances, a run that ends covering ``target``
    is preferred; otherwise the first complete run wins.
    """
    known = set(system.rule_names())
    for index, step in enumerate(steps):
        if step not in known:
            raise ReplayStuck(index, step)

    deepest = 0
    fallback: list[C] = []

    def search(config: C, index: int) -> Optional[C]:
        nonlocal deepest
        deepest = max(deepest, index)
        if index == len(steps):
            if target is None or system.covers(config, target):
                return config
            if not fallback:
                fallback.append(config)
            return None
        for successor in system.successors(config, steps[index]):
            found = search(successor, index + 1)
            if found is not None:
                return found
        return None

    found = search(initial, 0)
    if found is not None:
        return found
    if fallback:
        return fallback[0]
    raise ReplayStuck(deepest, steps[deepest])
