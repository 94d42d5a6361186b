"""Backward reachability over upward-closed sets.

Starting from the seeds, predecessors are accumulated round by round until
no unsubsumed element appears. Every retained element becomes a fact that
remembers the rule and the fact it was regressed from.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Callable, Generic, Iterable, Optional, Sequence, TypeVar

from hcov.errors import IterationBudgetExceeded, NotCoverable
from hcov.models.fact import SEED_RULE, Fact, Verdict

logger = logging.getLogger(__name__)

E = TypeVar("E")

PreFn = Callable[[E], Iterable[tuple[str, E]]]
SubsumeFn = Callable[[E, E], bool]
InitMemberFn = Callable[[E], bool]


class SymbolicDomain(ABC, Generic[E]):
    """What saturation needs to know about a kind of symbolic element."""

    @abstractmethod
    def predecessors(self, element: E) -> list[tuple[str, E]]:
        """``(rule name, predecessor)`` pairs, rules in declaration order."""
        ...

    @abstractmethod
    def subsumes(self, general: E, specific: E) -> bool:
        """The upward closure of ``general`` contains that of ``specific``."""
        ...

    @abstractmethod
    def is_initial(self, element: E) -> bool:
        """Some initial configuration lies in the upward closure of ``element``."""
        ...

    def initial_index(self, element: E) -> int | None:
        return 0 if self.is_initial(element) else None

    @abstractmethod
    def render_parts(self, element: E) -> tuple[str, str]:
        """The ``[atoms]`` and ``{constraint}`` fields of a fact line."""
        ...

    def saturate(self, seeds: Sequence[E], max_iterations: Optional[int] = None) -> Verdict[E]:
        verdict = saturate(
            self.predecessors, self.subsumes, self.is_initial, seeds, max_iterations,
        )
        index = None
        if verdict.covering_fact is not None:
            index = self.initial_index(verdict.fact(verdict.covering_fact).element)
        return Verdict(
            verdict.coverable,
            verdict.covering_fact,
            verdict.facts,
            verdict.iterations,
            initial_index=index,
            leq=self.subsumes,
        )


def saturate(
    pre_fn: PreFn,
    subsume_fn: SubsumeFn,
    init_member_fn: InitMemberFn,
    seeds: Sequence[E],
    max_iterations: Optional[int] = None,
) -> Verdict[E]:
    if not seeds:
        raise ValueError("saturation needs at least one seed")

    facts: list[Fact[E]] = []

    def retain(element: E, iteration: int, rule: Optional[str], parent: int) -> Optional[Fact[E]]:
        if any(subsume_fn(f.element, element) for f in facts):
            return None
        fact = Fact(iteration, element, len(facts) + 1, rule, parent)
        facts.append(fact)
        logger.debug("Fact %d (iteration %d, rule %s, parent %d)", fact.id, iteration, rule, parent)
        return fact

    frontier = [f for f in (retain(s, 0, None, 0) for s in seeds) if f is not None]
    logger.info("Saturation started with %d seed(s)", len(frontier))

    iteration = 0
    while frontier:
        iteration += 1
        if max_iterations is not None and iteration > max_iterations:
            logger.warning(
                "Iteration budget %d exhausted with %d facts", max_iterations, len(facts)
            )
            raise IterationBudgetExceeded(max_iterations, len(facts))
        produced: list[Fact[E]] = []
        discarded = 0
        for fact in frontier:
            for rule, element in pre_fn(fact.element):
                new = retain(element, iteration, rule, fact.id)
                if new is None:
                    discarded += 1
                else:
                    produced.append(new)
        logger.debug(
            "Round %d: %d new fact(s), %d subsumed", iteration, len(produced), discarded
        )
        frontier = produced

    covering = next((f.id for f in facts if init_member_fn(f.element)), None)
    iterations = max(f.iteration for f in facts) if facts else 0
    logger.info(
        "Saturation finished: %d facts, %d iteration(s), coverable=%s",
        len(facts), iterations, covering is not None,
    )
    return Verdict(covering is not None, covering, tuple(facts), iterations)


def reconstruct_trace(verdict: Verdict) -> list[str]:
    """Rule names in firing order, from the initial side to the seed."""
    if not verdict.coverable or verdict.covering_fact is None:
        raise NotCoverable("no covering fact: the target is not coverable")
    trace: list[str] = []
    fact = verdict.fact(verdict.covering_fact)
    while not fact.is_seed:
        trace.append(fact.rule)
        fact = verdict.fact(fact.parent)
    return trace


def render_fact(fact: Fact, parts: tuple[str, str]) -> str:
    atoms, constraint = parts
    rule = SEED_RULE if fact.rule is None else fact.rule
    return f"f({fact.iteration}, {atoms}, {constraint}, {fact.id}, {fact.parent}, {rule})."


def render_facts(
    verdict: Verdict, render_parts: Optional[Callable[[object], tuple[str, str]]] = None,
) -> str:
    """One ``f(i, [atoms], {constraint}, id, parent, rule).`` line per fact, newest first."""
    parts = render_parts or (lambda element: element.render_parts())
    lines = [render_fact(f, parts(f.element)) for f in reversed(verdict.facts)]
    return "\n".join(lines)
