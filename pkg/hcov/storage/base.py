from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path

from hcov.config import settings
from hcov.errors import ModelError

CORPUS_PREFIX = "corpus:"
MODEL_SUFFIX = ".hcov"


def read_model_text(path: Path, label: str) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ModelError(f"{label} is not valid UTF-8 (byte {exc.start})") from exc


class ModelSource(ABC):
    @abstractmethod
    def read(self, key: str) -> str: ...

    @abstractmethod
    def list_models(self) -> list[str]: ...

    def describe(self, key: str) -> str:
        return key


def get_model_source(ref: str) -> tuple[ModelSource, str]:
    """Pick the source for ``ref`` and return it with the key to read."""
    if ref.startswith(CORPUS_PREFIX):
        from hcov.storage.corpus import CorpusModelSource

        return CorpusModelSource(settings.corpus_dir), ref[len(CORPUS_PREFIX):]

    from hcov.storage.local import LocalModelSource

    return LocalModelSource(), ref
