#!/usr/bin/env python3
"""
RELAY_PRICING_* logging variables, also read from a .env file.
"""

from functools import lru_cache
from typing import Dict, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..core.models import EnvironmentConfiguration


class LoggingSettings(BaseSettings):
    """Logging options from the environment; every field may be unset."""

    model_config = SettingsConfigDict(
        env_prefix="RELAY_PRICING_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: Optional[str] = Field(
        default=None, description="Level of the relay_pricing root logger"
    )
    module_levels: Optional[str] = Field(
        default=None, description="Per-logger levels, e.g. relay_pricing.game=debug,relay_pricing.flow=info"
    )
    structured_logging: Optional[bool] = Field(
        default=None, description="Emit JSON log records"
    )
    log_file: Optional[str] = Field(
        default=None, description="Write logs to this file as well"
    )
    external_suppression_mode: Optional[str] = Field(
        default=None, description="Third-party suppression strategy (cli, library, development)"
    )

    @field_validator("log_level", "external_suppression_mode")
    @classmethod
    def _normalise(cls, value: Optional[str]) -> Optional[str]:
        return value.strip().lower() or None if value else None

    def get_parsed_module_levels(self) -> Optional[Dict[str, str]]:
        """Split ``name=level`` pairs; malformed pairs are skipped."""
        if not self.module_levels:
            return None
        parsed = {}
        for pair in self.module_levels.split(","):
            name, sep, level = pair.partition("=")
            if sep and name.strip():
                parsed[name.strip()] = level.strip().lower()
        return parsed or None

    def to_environment_configuration(self) -> EnvironmentConfiguration:
        return EnvironmentConfiguration(
            global_level=self.log_level,
            module_levels=self.get_parsed_module_levels(),
            enable_structured=self.structured_logging,
            log_file=self.log_file,
            external_suppression_mode=self.external_suppression_mode,
        )


@lru_cache(maxsize=1)
def read_environment() -> EnvironmentConfiguration:
    """The environment's logging options, read once per process."""
    return LoggingSettings().to_environment_configuration()


def clear_environment_cache() -> None:
    read_environment.cache_clear()
