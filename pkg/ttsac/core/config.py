"""
Configuration management module.

This module handles process-level configuration using environment variables
and Pydantic settings for type validation and documentation. Experiment
parameters live in ``ttsac.schemas.experiment`` instead.
"""

from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Laboratory settings loaded from environment variables.

    Attributes:
        LOG_LEVEL: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        LOG_FILE: Optional path of a rotating log file.
        APP_DEBUG: Enable debug mode (always writes logs/ttsac.log, adds error details).
        MC_WORKERS: Number of threads used for Monte Carlo blocks.
        MC_BLOCK_SIZE: Number of trials simulated per Monte Carlo block.
        MAX_DIM: Largest feature, render or motion dimension accepted by the harness.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=False,
    )

    LOG_LEVEL: str = Field(
        default="INFO",
        description="Logging level",
        pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$",
    )
    LOG_FILE: Optional[Path] = Field(
        default=None,
        description="Optional path of a rotating log file",
    )
    APP_DEBUG: bool = Field(
        default=False,
        description="Enable debug mode for development",
    )
    MC_WORKERS: int = Field(
        default=1,
        description="Number of threads used for Monte Carlo blocks",
        ge=1,
        le=64,
    )
    MC_BLOCK_SIZE: int = Field(
        default=4096,
        description="Number of trials simulated per Monte Carlo block",
        ge=1,
    )
    MAX_DIM: int = Field(
        default=64,
        description="Largest feature, render or motion dimension accepted by the harness",
        ge=1,
    )


settings = Settings()
"""
Global settings instance for process-wide configuration access.
"""
