from __future__ import annotations

from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="HCOV_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    app_name: str = "hcov"
    log_level: str = "WARNING"

    # Saturation
    max_iterations: Optional[int] = None

    # Forward oracle
    oracle_depth: int = 10
    id_spread: int = 1024

    @property
    def corpus_dir(self) -> Path:
        return Path(__file__).resolve().parent / "corpus"


settings = Settings()
