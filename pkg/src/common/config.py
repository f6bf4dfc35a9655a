"""Centralized configuration management."""
from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings (environment variables prefixed with ``PKS_``)."""

    # Service info
    service_name: str = "pks"

    # Output
    output_dir: Path | None = None

    # Sweeps
    max_workers: int = Field(default=2, ge=1)

    # Stationary profile shooting
    profile_step_fraction: float = Field(default=2000.0, gt=0)
    profile_center_height: float = Field(default=1.0, gt=0)

    # Logging
    log_level: str = "INFO"
    json_logs: bool = False

    model_config = SettingsConfigDict(
        env_prefix="PKS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
