from __future__ import annotations

import pytest

from hcov.errors import ModelError
from hcov.models.model_file import ModelFile, ModelKind
from hcov.services.checker import run_check
from hcov.services.encodings import encode_time
from hcov.services.parser import parse_model, render_model
from tests.helpers import corpus, word_config


@pytest.fixture
def single_model(single_net) -> ModelFile:
    return ModelFile(
        ModelKind.PETRI,
        net=single_net,
        targets=(
            ("once", word_config(["q"], "ht")),
            ("twice", word_config(["q"], "ht ht")),
        ),
        expectations=(("once", True),),
    )


def test_rules_consume_and_restart_the_clock(single_model):
    encoded = encode_time(single_model)
    assert encoded.kind is ModelKind.MSR
    text = render_model(encoded)
    assert "pred p/0 q/0 r/0 time/1 h_ht/1 h_e2/1" in text
    assert "rule t: p, time(T) -> q, time(T2), h_ht(T) where T<T2" in text
    assert "init: p, time(0)" in text
    assert parse_model(text) == encoded


def test_word_targets_order_their_stamps():
    encoded = encode_time(corpus("petri_order"), "stop_after_a")
    assert encoded.target_names == ["stop_after_a"]
    assert encoded.target("stop_after_a").render() == "[h_a(A),h_stop(B)] : {A<B}"
    assert encoded.expected("stop_after_a") is True


def test_bag_targets_are_unordered():
    encoded = encode_time(corpus("petri_parikh"), "drained_twice")
    assert encoded.target("drained_twice").render() == (
        "[q,h_inc(_),h_inc(_),h_dec(_),h_dec(_)] : {}"
    )


def test_only_nets_can_be_encoded(android_unsafe):
    with pytest.raises(ModelError):
        encode_time(android_unsafe)


def test_encoded_single_net_keeps_its_verdicts(single_model):
    encoded = encode_time(single_model)
    assert run_check(encoded, "once").verdict.coverable
    assert not run_check(encoded, "twice").verdict.coverable


@pytest.mark.parametrize("name", ["petri_single", "petri_order", "petri_parikh"])
def test_encoding_preserves_verdicts(name):
    model = corpus(name)
    encoded = encode_time(model)
    for target in model.target_names:
        direct = run_check(model, target).verdict.coverable
        assert run_check(encoded, target).verdict.coverable == direct, target
