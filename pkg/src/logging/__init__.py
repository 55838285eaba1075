#!/usr/bin/env python3
"""
relay_pricing logging package.

Structured logging with module-level control for the solvers and CLI:

- core: enums, configuration models, logger name registry, formatters
- configuration: environment reading (pydantic-settings), log file paths,
  the configurator
- suppression: third-party logger levels per runtime context
- decorators: operation timing
- utils: logger factory and runtime level management

Usage:
    from src.logging import configure_logging, get_logger

    configure_logging(level="info")
    logger = get_logger(__name__)
"""

from .core import (
    LogLevel,
    SuppressionMode,
    EnvironmentVariable,
    LoggingConfiguration,
    ModuleLevelConfiguration,
    EnvironmentConfiguration,
    LoggerNames,
    OTelFormatter,
    HumanReadableFormatter,
)
from .configuration import (
    LoggingConfigurator,
    read_environment,
    LogFilePathGenerator,
)
from .suppression import ExternalLibrarySuppressor, get_suppression_strategy
from .decorators import log_operation
from .utils import (
    get_logger,
    set_module_level,
    get_module_levels,
    reset_module_levels,
    configure_logging,
)

__all__ = [
    "LogLevel",
    "SuppressionMode",
    "EnvironmentVariable",
    "LoggingConfiguration",
    "ModuleLevelConfiguration",
    "EnvironmentConfiguration",
    "LoggerNames",
    "OTelFormatter",
    "HumanReadableFormatter",
    "LoggingConfigurator",
    "read_environment",
    "LogFilePathGenerator",
    "ExternalLibrarySuppressor",
    "get_suppression_strategy",
    "log_operation",
    "get_logger",
    "set_module_level",
    "get_module_levels",
    "reset_module_levels",
    "configure_logging",
]
