from __future__ import annotations

import pytest

from hcov.errors import ModelError, ReplayStuck
from hcov.models.msr import GroundAtom, configuration
from hcov.services.msr_id import MsrDomain
from hcov.services.oracle import explore, explore_all, replay
from hcov.services.petri_hist import PetriDomain
from tests.helpers import corpus, word_config


def test_explore_finds_shortest_witness(single_net):
    domain = PetriDomain(single_net)
    result = explore(domain, single_net.initial_config(), word_config(["q"], "ht"), 5)
    assert result.found
    assert result.firing_sequence == ["t"]
    assert result.witness == word_config(["q"], "ht")
    assert result.depth_reached == 1


def test_explore_exhausts_finite_state_space(single_net):
    domain = PetriDomain(single_net)
    result = explore(domain, single_net.initial_config(), word_config(["q"], "ht ht"), 5)
    assert not result.found
    assert result.frontier_exhausted
    assert len(result.visited) == 2


def test_explore_at_depth_zero(single_net):
    domain = PetriDomain(single_net)
    initial = single_net.initial_config()
    assert explore(domain, initial, word_config([]), 0).firing_sequence == []
    result = explore(domain, initial, word_config(["q"]), 0)
    assert not result.found
    assert not result.frontier_exhausted


def test_explore_stops_at_the_horizon():
    model = corpus("automaton_history")
    domain = PetriDomain(model.net)
    result = explore(domain, model.net.initial_config(), model.target("try_after_lock"), 3)
    assert not result.found
    assert not result.frontier_exhausted
    assert result.depth_reached == 3


def test_explore_rejects_negative_depth(single_net):
    with pytest.raises(ValueError):
        explore(PetriDomain(single_net), single_net.initial_config(), word_config([]), -1)


def test_explore_all_reports_the_initial_used(android_safe):
    domain = MsrDomain(android_safe.msr)
    target = android_safe.target("conflict")
    index, result = explore_all(domain, target, 4)
    assert index is None
    assert not result.found


def test_explore_all_needs_an_initial(android_unsafe):
    from dataclasses import replace

    domain = MsrDomain(replace(android_unsafe.msr, initials=()))
    with pytest.raises(ModelError):
        explore_all(domain, android_unsafe.target("conflict"), 2)


def test_android_witness(android_unsafe):
    domain = MsrDomain(android_unsafe.msr)
    index, result = explore_all(domain, android_unsafe.target("conflict"), 5)
    assert index == 0
    assert result.firing_sequence == ["1", "2", "3"]


def test_exploration_is_invariant_under_id_shifts(android_unsafe):
    domain = MsrDomain(android_unsafe.msr)
    (initial,) = android_unsafe.msr.initials
    shifted = configuration(
        GroundAtom(a.predicate, None if a.value is None else a.value + 100) for a in initial
    )
    target = android_unsafe.target("conflict")
    plain = explore(domain, initial, target, 5)
    moved = explore(domain, shifted, target, 5)
    assert plain.visited == moved.visited
    assert plain.firing_sequence == moved.firing_sequence


def test_replay_fires_in_order(single_net):
    domain = PetriDomain(single_net)
    final = replay(domain, single_net.initial_config(), ["t"])
    assert final == word_config(["q"], "ht")


def test_replay_prefers_a_covering_run(android_unsafe):
    domain = MsrDomain(android_unsafe.msr)
    (initial,) = android_unsafe.msr.initials
    target = android_unsafe.target("conflict")
    final = replay(domain, initial, ["1", "2", "3"], target)
    assert domain.covers(final, target)


def test_replay_stuck_reports_the_step(single_net):
    domain = PetriDomain(single_net)
    with pytest.raises(ReplayStuck) as info:
        replay(domain, single_net.initial_config(), ["t", "t"])
    assert info.value.index == 1

    with pytest.raises(ReplayStuck) as info:
        replay(domain, single_net.initial_config(), ["missing"])
    assert info.value.index == 0


def test_replay_falls_back_to_a_complete_run(single_net):
    domain = PetriDomain(single_net)
    final = replay(domain, single_net.initial_config(), ["t"], word_config(["r"]))
    assert final == word_config(["q"], "ht")
