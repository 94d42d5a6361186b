from __future__ import annotations

import pytest

from hcov.errors import IterationBudgetExceeded, NotCoverable
from hcov.models.fact import Fact
from hcov.models.msr import Atom, ConstrainedConfig
from hcov.services.engine import reconstruct_trace, render_fact, render_facts, saturate
from hcov.services.msr_id import MsrDomain, subsumes
from hcov.services.oracle import explore_all
from hcov.services.petri_hist import hcov_petri
from tests.helpers import word_config


def unsafe_verdict(model, max_iterations=None):
    return MsrDomain(model.msr).saturate([model.target("conflict")], max_iterations)


def cc(*atoms: tuple) -> ConstrainedConfig:
    return ConstrainedConfig.build(Atom(*a) for a in atoms)


def test_countdown_saturation():
    verdict = saturate(
        lambda n: [("dec", n - 1)] if n > 0 else [],
        lambda a, b: a <= b,
        lambda n: n <= 0,
        [3],
    )
    assert verdict.coverable
    assert [f.element for f in verdict.facts] == [3, 2, 1, 0]
    assert verdict.iterations == 3
    assert reconstruct_trace(verdict) == ["dec", "dec", "dec"]


def test_saturation_discards_subsumed_elements():
    verdict = saturate(lambda n: [("up", n + 1)], lambda a, b: a <= b, lambda n: False, [0, 5])
    assert [f.element for f in verdict.facts] == [0]
    assert not verdict.coverable


def test_saturation_needs_a_seed():
    with pytest.raises(ValueError):
        saturate(lambda n: [], lambda a, b: a <= b, lambda n: True, [])


def test_android_unsafe_fixpoint(android_unsafe):
    verdict = unsafe_verdict(android_unsafe)
    assert verdict.coverable
    assert len(verdict.facts) == 4
    assert verdict.iterations == 3
    assert verdict.covering_fact == 4
    assert verdict.initial_index == 0
    assert reconstruct_trace(verdict) == ["1", "2", "3"]

    lines = render_facts(verdict).splitlines()
    assert lines[0] == "f(3, [c1(A),a1(_),b1(_),i1(_),hc(A)], {}, 4, 3, 1)."
    assert lines[2] == "f(1, [b2(A),i1(_),hc(A)], {}, 2, 1, 3)."
    assert lines[3] == "f(0, [hc(A),hi(A)], {}, 1, 0, 0)."

    third = verdict.fact(3)
    assert (third.iteration, third.parent, third.rule) == (2, 2, "2")
    listed = cc(("a2", "x"), ("b1", "y"), ("i1", "z"), ("hc", "x"))
    assert subsumes(listed, third.element) and subsumes(third.element, listed)


def test_android_safe_is_not_coverable(android_safe):
    verdict = MsrDomain(android_safe.msr).saturate([android_safe.target("conflict")])
    assert not verdict.coverable
    assert verdict.covering_fact is None
    with pytest.raises(NotCoverable):
        reconstruct_trace(verdict)


def test_android_safe_fixpoint_contains_the_listed_facts(android_safe):
    verdict = MsrDomain(android_safe.msr).saturate([android_safe.target("conflict")])
    listed = [
        cc(("c1", "u"), ("a1", "v"), ("ok",), ("b1", "x"), ("i1", "w"), ("hc", "x")),
        cc(("b1", "x"), ("a2", "v"), ("ok",), ("i1", "w"), ("hc", "x")),
        cc(("b2", "x"), ("i1", "w"), ("ok",), ("hc", "x")),
        cc(("hc", "x"), ("hi", "x")),
    ]
    for element in listed:
        assert any(
            subsumes(element, f.element) and subsumes(f.element, element) for f in verdict.facts
        ), element.render()


def test_android_safe_has_no_witness_within_eight_steps(android_safe):
    index, result = explore_all(MsrDomain(android_safe.msr), android_safe.target("conflict"), 8)
    assert index is None
    assert not result.found


def test_fixpoint_is_closed_under_predecessors(android_safe):
    domain = MsrDomain(android_safe.msr)
    verdict = domain.saturate([android_safe.target("conflict")])
    for fact in verdict.facts:
        for _, element in domain.predecessors(fact.element):
            assert any(subsumes(f.element, element) for f in verdict.facts)


def test_rendering_is_deterministic(android_safe):
    domain = MsrDomain(android_safe.msr)
    first = render_facts(domain.saturate([android_safe.target("conflict")]))
    second = render_facts(domain.saturate([android_safe.target("conflict")]))
    assert first == second


def test_iteration_budget(android_unsafe):
    with pytest.raises(IterationBudgetExceeded) as info:
        unsafe_verdict(android_unsafe, max_iterations=3)
    assert info.value.budget == 3
    assert info.value.fact_count == 4
    assert unsafe_verdict(android_unsafe, max_iterations=4).coverable


def test_render_fact_of_empty_seed():
    empty = ConstrainedConfig.build([])
    assert render_fact(Fact(0, empty, 1), empty.render_parts()) == "f(0, [], {}, 1, 0, 0)."


def test_petri_verdict_renders_history(single_net):
    verdict = hcov_petri(single_net, word_config(["q"], "ht"))
    assert render_facts(verdict).splitlines() == [
        "f(1, [p], {}, 2, 1, t).",
        "f(0, [q], {ht}, 1, 0, 0).",
    ]


def test_basis_is_minimal(single_net):
    verdict = hcov_petri(single_net, word_config(["q"], "ht"))
    basis = verdict.basis()
    assert word_config(["p"]) in basis.elements
    assert len(basis.elements) == 2
