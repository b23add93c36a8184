"""Runtime settings using Pydantic."""

from pathlib import Path
from typing import Optional

import psutil
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def _default_threads() -> int:
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


class Settings(BaseSettings):
    """Runtime settings with validation."""

    model_config = SettingsConfigDict(
        env_prefix="QUENCH_LAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = Field(default="quench-lab", description="Application name")
    app_version: str = Field(default="0.1.0", description="Application version")

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: Optional[Path] = Field(
        default=None, description="Optional rotating JSON log file"
    )

    # Parallelism
    threads: int = Field(
        default_factory=_default_threads,
        description="Worker threads for trajectory shards and sweeps",
        ge=1,
        le=256,
    )
    shard_size: int = Field(
        default=1024,
        description="Trajectories per shard; fixes the reduction order",
        ge=1,
        le=1_000_000,
    )

    # Numerics
    default_bins: int = Field(
        default=400, description="Default histogram bin count", ge=8, le=100_000
    )
    divergence_bound: float = Field(
        default=1e6,
        description="Coordinate magnitude that aborts a trajectory",
        gt=0,
    )
    noise_block: int = Field(
        default=1024,
        description="Noise draws per trajectory generated at once",
        ge=1,
        le=1_000_000,
    )

    # Output
    output_root: Path = Field(
        default=Path("results"), description="Default parent of run directories"
    )
    float_digits: int = Field(
        default=17, description="Significant digits in CSV/JSON floats", ge=6, le=17
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"Invalid log level. Must be one of: {valid_levels}")
        return v_upper


# Global settings instance
settings = Settings()
