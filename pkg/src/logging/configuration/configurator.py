#!/usr/bin/env python3
"""
Installs relay_pricing handlers, levels and third-party suppression.
"""

import logging
import sys
from typing import Dict, Iterator, Optional

from ..core.formatter import HumanReadableFormatter, OTelFormatter
from ..core.logger_names import LoggerNames
from ..core.models import LoggingConfiguration
from .environment import read_environment
from .file_utils import LogFilePathGenerator


def _formatter(config: LoggingConfiguration) -> logging.Formatter:
    if config.enable_structured:
        return OTelFormatter()
    return HumanReadableFormatter(use_color=sys.stderr.isatty())


def _handlers(config: LoggingConfiguration) -> Iterator[logging.Handler]:
    yield logging.StreamHandler(sys.stderr)
    if config.enable_file_output:
        path = config.log_file or LogFilePathGenerator.get_next_log_file_path()
        LogFilePathGenerator.ensure_log_directory(str(path.parent))
        yield logging.FileHandler(path, encoding="utf-8")


class LoggingConfigurator:
    """Applies a LoggingConfiguration; repeating the same one is a no-op."""

    _applied: Optional[LoggingConfiguration] = None

    @classmethod
    def configure(
        cls,
        global_level: Optional[str] = None,
        module_levels: Optional[Dict[str, str]] = None,
        enable_structured: Optional[bool] = None,
        enable_file_output: bool = False,
        log_file: Optional[str] = None,
        enable_external_suppression: bool = True,
        external_suppression_mode: Optional[str] = None,
    ) -> logging.Logger:
        """Configure logging and return the package root logger."""
        config = LoggingConfiguration.from_environment_and_params(
            env_config=read_environment(),
            global_level=global_level,
            module_levels=module_levels,
            enable_structured=enable_structured,
            enable_file_output=enable_file_output,
            log_file=log_file,
            enable_external_suppression=enable_external_suppression,
            external_suppression_mode=external_suppression_mode,
        )
        if config != cls._applied:
            cls._apply(config)
            cls._applied = config
        return logging.getLogger(LoggerNames.APP_ROOT)

    @classmethod
    def _apply(cls, config: LoggingConfiguration) -> None:
        root = logging.getLogger(LoggerNames.APP_ROOT)
        for old in list(root.handlers):
            root.removeHandler(old)
            old.close()

        formatter = _formatter(config)
        for handler in _handlers(config):
            handler.setFormatter(formatter)
            handler.setLevel(config.handler_level.name)
            root.addHandler(handler)
        root.setLevel(config.global_level.name)

        for name, level in config.module_levels.levels.items():
            logging.getLogger(name).setLevel(level.name)

        if config.enable_external_suppression:
            # Import here to avoid circular imports
            from ..suppression.strategies import get_suppression_strategy

            get_suppression_strategy(config.external_suppression_mode).apply_suppression()

    @classmethod
    def reset(cls) -> None:
        """Forget the applied configuration so the next call reinstalls handlers."""
        cls._applied = None
