"""
Application configuration using Pydantic Settings.
Loads environment variables with validation and defaults.
"""

import logging
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


OUTPUT_FORMATS = ("text", "json", "m2")
VERIFY_LEVELS = ("off", "corpus", "full")
IDEAL_KINDS = ("ci", "cj", "hatj", "hatj-binomial", "checkj", "gset")


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        env_prefix="PERMIDEAL_",
    )

    # Enumeration
    cap_points: int = Field(default=16)
    workers: int = Field(default=1)

    # Oracle
    cap_degree: int = Field(default=8)
    radical_degree_cap: int = Field(default=3)

    # Verification
    confluence_trials: int = Field(default=20)
    random_seed: int = Field(default=0)
    verify_level: str = Field(default="corpus")

    # Output
    output_format: str = Field(default="text")
    log_level: str = Field(default="WARNING")

    def get_log_level(self) -> int:
        """Resolve the configured log level name to a logging constant."""
        level = logging.getLevelName(self.log_level.upper())
        if not isinstance(level, int):
            raise ValueError(
                f"Unknown log level: {self.log_level}. "
                "Use DEBUG, INFO, WARNING, ERROR or CRITICAL."
            )
        return level


# Singleton instance
settings = Settings()


class RunConfig(BaseModel):
    """One command-line invocation, validated before any work starts."""

    radices: List[int]
    t: int
    ideal: str = Field(default="cj")
    cap_points: int = Field(default_factory=lambda: settings.cap_points)
    cap_degree: int = Field(default_factory=lambda: settings.cap_degree)
    output_format: str = Field(default_factory=lambda: settings.output_format)
    level: str = Field(default_factory=lambda: settings.verify_level)
    workers: int = Field(default_factory=lambda: settings.workers)

    @field_validator("radices")
    @classmethod
    def _positive_radices(cls, value: List[int]) -> List[int]:
        if not value or any(r < 1 for r in value):
            raise ValueError("every radix must be a positive integer")
        return value

    @field_validator("cap_points", "cap_degree", "workers")
    @classmethod
    def _positive_caps(cls, value: int) -> int:
        if value < 1:
            raise ValueError("caps and worker counts must be positive")
        return value

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {', '.join(OUTPUT_FORMATS)}")
        return value

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if value not in VERIFY_LEVELS:
            raise ValueError(f"level must be one of {', '.join(VERIFY_LEVELS)}")
        return value

    @field_validator("ideal")
    @classmethod
    def _known_ideal(cls, value: str) -> str:
        if value not in IDEAL_KINDS:
            raise ValueError(f"ideal must be one of {', '.join(IDEAL_KINDS)}")
        return value

    @model_validator(mode="after")
    def _t_in_range(self) -> "RunConfig":
        if not 1 <= self.t <= len(self.radices):
            raise ValueError(f"t must satisfy 1 <= t <= {len(self.radices)}")
        return self

    def shape(self, t: Optional[int] = None):
        """Build the Shape this configuration describes."""
        from src.hyperlattice import Shape

        return Shape(tuple(self.radices), self.t if t is None else t)
