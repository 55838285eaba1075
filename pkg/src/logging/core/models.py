#!/usr/bin/env python3
"""
Data models for logging configuration.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from .enums import LogLevel, SuppressionMode


@dataclass(frozen=True)
class EnvironmentConfiguration:
    """Logging options as read from the environment, unparsed."""

    global_level: Optional[str] = None
    module_levels: Optional[Dict[str, str]] = None
    enable_structured: Optional[bool] = None
    log_file: Optional[str] = None
    external_suppression_mode: Optional[str] = None


@dataclass(frozen=True)
class ModuleLevelConfiguration:
    """Per-logger level overrides."""

    levels: Dict[str, LogLevel] = field(default_factory=dict)

    @classmethod
    def from_string_dict(
        cls, string_levels: Dict[str, str]
    ) -> "ModuleLevelConfiguration":
        """Parse name=level pairs, dropping entries with unknown levels."""
        parsed_levels = {}
        for module, level_str in string_levels.items():
            try:
                parsed_levels[module] = LogLevel.from_string(level_str)
            except ValueError:
                continue
        return cls(levels=parsed_levels)

    @property
    def most_verbose(self) -> Optional[LogLevel]:
        if not self.levels:
            return None
        return min(self.levels.values(), key=lambda level: level.severity)


@dataclass(frozen=True)
class LoggingConfiguration:
    """
    Resolved logging configuration.

    File output is opt-in: a CLI run writes to stderr only unless a log
    file is named or file output is requested.
    """

    global_level: LogLevel = LogLevel.WARNING
    module_levels: ModuleLevelConfiguration = field(
        default_factory=ModuleLevelConfiguration
    )
    enable_structured: bool = False
    enable_file_output: bool = False
    log_file: Optional[Path] = None
    enable_external_suppression: bool = True
    external_suppression_mode: SuppressionMode = SuppressionMode.CLI

    @classmethod
    def from_environment_and_params(
        cls,
        env_config: EnvironmentConfiguration,
        global_level: Optional[str] = None,
        module_levels: Optional[Dict[str, str]] = None,
        enable_structured: Optional[bool] = None,
        enable_file_output: bool = False,
        log_file: Optional[str] = None,
        enable_external_suppression: bool = True,
        external_suppression_mode: Optional[str] = None,
    ) -> "LoggingConfiguration":
        """
        Combine environment values with explicit parameters.

        Environment values win over parameters, parameters win over the
        defaults. Naming a log file turns file output on.

        Raises:
            ValueError: If a level or suppression mode is unknown
        """
        level = env_config.global_level or global_level or "warning"
        structured = (
            env_config.enable_structured
            if env_config.enable_structured is not None
            else bool(enable_structured)
        )
        file_name = env_config.log_file or log_file
        mode = (
            env_config.external_suppression_mode
            or external_suppression_mode
            or SuppressionMode.CLI.value
        )
        merged_levels = {**(module_levels or {}), **(env_config.module_levels or {})}

        try:
            return cls(
                global_level=LogLevel.from_string(level),
                module_levels=ModuleLevelConfiguration.from_string_dict(
                    merged_levels
                ),
                enable_structured=structured,
                enable_file_output=enable_file_output or file_name is not None,
                log_file=Path(file_name) if file_name else None,
                enable_external_suppression=enable_external_suppression,
                external_suppression_mode=SuppressionMode.from_string(mode),
            )
        except ValueError as e:
            raise ValueError(f"Invalid logging configuration: {e}") from e

    @property
    def handler_level(self) -> LogLevel:
        """Most verbose level any logger needs the handlers to pass."""
        module_level = self.module_levels.most_verbose
        if module_level is None:
            return self.global_level
        return min(
            (self.global_level, module_level), key=lambda level: level.severity
        )
