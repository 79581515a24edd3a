"""Application configuration and settings."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from QSPSIM_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="QSPSIM_", env_file=".env", env_file_encoding="utf-8", extra="allow"
    )

    # Application
    log_level: str = "INFO"

    # Workers
    jobs: int = Field(default=1, ge=1)

    # Numerics
    n_cap: int = Field(default=64, ge=2)
    grid_size: int = Field(default=1024, ge=64)

    # Random instances
    default_qubits: int = Field(default=2, ge=1)
    default_sparsity: int = Field(default=2, ge=1)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
