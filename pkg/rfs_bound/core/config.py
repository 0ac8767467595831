"""
Конфигурация приложения через переменные окружения.
Использует Pydantic Settings для валидации и типизации.
"""

import os
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки приложения, загружаемые из окружения и .env файла."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="RFS_BOUND_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "rfs-bound"
    app_version: str = "0.1.0"

    # Logging
    log_level: str = "INFO"

    # Workers (RFS_BOUND_THREADS)
    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)

    # Bound pipeline
    max_scans: int = Field(default=20, ge=1)
    memory_budget_mb: int = Field(default=2048, ge=1)

    # Monte Carlo
    particles: int = Field(default=2000, ge=10)
    existence_threshold: float = Field(default=0.5, ge=0.0, le=1.0)

    # Output
    output_dir: str = "results"


@lru_cache
def get_settings() -> Settings:
    """
    Возвращает singleton экземпляр настроек.
    Кэшируется для повторного использования.
    """
    return Settings()


settings = get_settings()
