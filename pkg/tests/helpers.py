from __future__ import annotations

from hcov.models.history import History
from hcov.models.model_file import ModelFile
from hcov.models.multiset import multiset
from hcov.models.petri import HConfig
from hcov.services.checker import load_model
from hcov.storage.base import CORPUS_PREFIX, get_model_source


def corpus(name: str) -> ModelFile:
    return load_model(f"corpus:{name}")


def word_config(marking: list[str], events: str = "") -> HConfig:
    return HConfig(multiset(marking), History.word(events.split()))


def corpus_text(name: str) -> str:
    source, key = get_model_source(f"{CORPUS_PREFIX}{name}")
    return source.read(key)
