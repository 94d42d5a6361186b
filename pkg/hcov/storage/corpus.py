from __future__ import annotations

from pathlib import Path

from hcov.storage.base import CORPUS_PREFIX, MODEL_SUFFIX, ModelSource, read_model_text


class CorpusModelSource(ModelSource):
    """The example models shipped inside the package."""

    def __init__(self, root: Path) -> None:
        self._root = root

    def read(self, key: str) -> str:
        name = key[: -len(MODEL_SUFFIX)] if key.endswith(MODEL_SUFFIX) else key
        path = self._root / f"{name}{MODEL_SUFFIX}"
        if not path.is_file():
            raise FileNotFoundError(
                f"no corpus model '{name}'. Available: {', '.join(self.list_models())}"
            )
        return read_model_text(path, self.describe(name))

    def list_models(self) -> list[str]:
        return sorted(p.stem for p in self._root.glob(f"*{MODEL_SUFFIX}"))

    def describe(self, key: str) -> str:
        return f"{CORPUS_PREFIX}{key}"
