"""Glue between model files, the saturation engine and the forward oracle."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Union

from hcov.config import settings
from hcov.errors import HcovError, ModelError
from hcov.models.fact import Verdict
from hcov.models.model_file import ModelFile, ModelKind
from hcov.schemas.verdict import CrosscheckReport, FactRecord, VerdictReport, WitnessReport
from hcov.services.engine import reconstruct_trace, render_facts
from hcov.services.msr_id import MsrDomain
from hcov.services.oracle import ExploreResult, explore_all, replay
from hcov.services.parser import parse_model
from hcov.services.petri_hist import PetriDomain
from hcov.storage.base import get_model_source

logger = logging.getLogger(__name__)

Domain = Union[PetriDomain, MsrDomain]

_DOMAIN_REGISTRY: dict[ModelKind, Callable[[ModelFile], Domain]] = {
    ModelKind.PETRI: lambda model: PetriDomain(model.net),
    ModelKind.AUTOMATON: lambda model: PetriDomain(model.net),
    ModelKind.MSR: lambda model: MsrDomain(model.msr),
}


def get_domain(model: ModelFile) -> Domain:
    factory = _DOMAIN_REGISTRY.get(model.kind)
    if factory is None:
        raise ModelError(f"no checker registered for '{model.kind.value}' models")
    return factory(model)


def load_model(ref: str) -> ModelFile:
    """Parse a model from a path or a ``corpus:NAME`` reference."""
    source, key = get_model_source(ref)
    model = parse_model(source.read(key))
    logger.info("Loaded %s", source.describe(key))
    return model


@dataclass
class CheckResult:
    model: ModelFile
    target_name: str
    verdict: Verdict
    domain: Domain

    @property
    def trace(self) -> Optional[list[str]]:
        return reconstruct_trace(self.verdict) if self.verdict.coverable else None

    @property
    def expected(self) -> Optional[bool]:
        return self.model.expected(self.target_name)

    @property
    def matches_expectation(self) -> bool:
        return self.expected is None or self.expected == self.verdict.coverable

    def fact_records(self) -> list[FactRecord]:
        records = []
        for fact in reversed(self.verdict.facts):
            atoms, constraint = self.domain.render_parts(fact.element)
            records.append(
                FactRecord(
                    iteration=fact.iteration,
                    atoms=atoms,
                    constraint=constraint,
                    id=fact.id,
                    rule=fact.rule if fact.rule is not None else "0",
                    parent=fact.parent,
                )
            )
        return records

    def render_facts(self) -> str:
        return render_facts(self.verdict, self.domain.render_parts)

    def report(self, model_name: str, include_facts: bool = True) -> VerdictReport:
        return VerdictReport(
            model=model_name,
            target=self.target_name,
            coverable=self.verdict.coverable,
            iterations=self.verdict.iterations,
            fact_count=len(self.verdict.facts),
            covering_fact=self.verdict.covering_fact,
            initial_index=self.verdict.initial_index,
            trace=self.trace,
            expected=self.expected,
            facts=self.fact_records() if include_facts else [],
        )


def _budget(max_iterations: Optional[int]) -> Optional[int]:
    return max_iterations if max_iterations is not None else settings.max_iterations


def run_check(
    model: ModelFile, target_name: str, max_iterations: Optional[int] = None,
) -> CheckResult:
    target = model.target(target_name)
    domain = get_domain(model)
    verdict = domain.saturate([target], _budget(max_iterations))
    result = CheckResult(model, target_name, verdict, domain)
    if not result.matches_expectation:
        logger.warning(
            "Target '%s' was expected %s but the verdict is %s",
            target_name,
            "coverable" if result.expected else "safe",
            "coverable" if verdict.coverable else "safe",
        )
    return result


@dataclass
class SimulateResult:
    target_name: str
    depth: int
    initial_index: Optional[int]
    exploration: ExploreResult
    domain: Domain

    def report(self, model_name: str) -> WitnessReport:
        found = self.exploration.found
        return WitnessReport(
            model=model_name,
            target=self.target_name,
            depth=self.depth,
            found=found,
            firing_sequence=self.exploration.firing_sequence if found else None,
            configuration=self.domain.render_config(self.exploration.witness) if found else None,
            initial_index=self.initial_index,
            frontier_exhausted=self.exploration.frontier_exhausted,
            visited=len(self.exploration.visited),
        )


def run_simulate(model: ModelFile, target_name: str, depth: Optional[int] = None) -> SimulateResult:
    depth = settings.oracle_depth if depth is None else depth
    target = model.target(target_name)
    domain = get_domain(model)
    index, exploration = explore_all(domain, target, depth)
    return SimulateResult(target_name, depth, index, exploration, domain)


CheckFn = Callable[[ModelFile, str, Optional[int]], CheckResult]


def run_crosscheck(
    model: ModelFile,
    target_name: str,
    depth: Optional[int] = None,
    max_iterations: Optional[int] = None,
    check: CheckFn = run_check,
    model_name: str = "",
) -> CrosscheckReport:
    """Compare the saturation verdict with forward exploration and trace replay."""
    depth = settings.oracle_depth if depth is None else depth
    checked = check(model, target_name, max_iterations)
    simulated = run_simulate(model, target_name, depth)
    target = model.target(target_name)
    found = simulated.exploration.found

    replay_covers: Optional[bool] = None
    trace = checked.trace
    if checked.verdict.coverable:
        initials = checked.domain.initials()
        index = checked.verdict.initial_index or 0
        try:
            final = replay(checked.domain, initials[index], trace, target)
            replay_covers = checked.domain.covers(final, target)
        except HcovError:
            replay_covers = False
        agree = replay_covers and (found or depth < len(trace))
    else:
        agree = not found

    engine_word = "coverable" if checked.verdict.coverable else "not coverable"
    oracle_word = "witness found" if found else f"no witness up to depth {depth}"
    if agree:
        message = f"AGREE ({oracle_word})"
        logger.info("Crosscheck of '%s' agrees", target_name)
    else:
        message = f"DISAGREE (engine: {engine_word}; oracle: {oracle_word}"
        if replay_covers is not None:
            message += f"; replay {'covers' if replay_covers else 'does not cover'} the target"
        message += ")"
        logger.warning("Crosscheck of '%s' disagrees: %s", target_name, message)

    return CrosscheckReport(
        model=model_name,
        target=target_name,
        depth=depth,
        agree=bool(agree),
        engine_coverable=checked.verdict.coverable,
        oracle_found=found,
        trace=trace,
        replay_covers=replay_covers,
        message=message,
    )
