from __future__ import annotations

from pathlib import Path
from typing import Optional

from hcov.storage.base import MODEL_SUFFIX, ModelSource, read_model_text


class LocalModelSource(ModelSource):
    def __init__(self, root: Optional[Path] = None) -> None:
        self._root = root

    def _path(self, key: str) -> Path:
        return self._root / key if self._root else Path(key)

    def read(self, key: str) -> str:
        return read_model_text(self._path(key), self.describe(key))

    def list_models(self) -> list[str]:
        root = self._root or Path.cwd()
        return sorted(p.name for p in root.glob(f"*{MODEL_SUFFIX}"))

    def describe(self, key: str) -> str:
        return str(self._path(key))
