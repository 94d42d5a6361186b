from __future__ import annotations

import pytest

from hcov.models.history import LogMode
from hcov.models.model_file import ModelFile
from hcov.models.multiset import multiset
from hcov.models.petri import PetriNetH, Transition
from tests.helpers import corpus


@pytest.fixture
def single_net() -> PetriNetH:
    """``t: {p} -> {q}`` logging ``ht``, one token on ``p``."""
    return PetriNetH(
        places=("p", "q", "r"),
        transitions=(Transition("t", multiset(["p"]), multiset(["q"]), "ht"),),
        initial=multiset(["p"]),
        log_mode=LogMode.WORD,
        events=("ht", "e2"),
    )


@pytest.fixture
def android_unsafe() -> ModelFile:
    return corpus("android_unsafe")


@pytest.fixture
def android_safe() -> ModelFile:
    return corpus("android_safe")


@pytest.fixture
def correspondence() -> ModelFile:
    return corpus("correspondence")
