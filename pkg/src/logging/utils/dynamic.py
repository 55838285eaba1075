#!/usr/bin/env python3
"""
Logger creation and runtime level management.
"""

import logging
from typing import Dict

from ..core.enums import LogLevel
from ..core.logger_names import LoggerNames


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger named after the calling module.

    ``src.flow.social_optimum`` becomes ``relay_pricing.flow.social_optimum``;
    names outside the package are nested under the root.

    Args:
        name: Usually ``__name__`` of the calling module

    Returns:
        Logger instance
    """
    if name == "src" or name.startswith("src."):
        app_name = name.replace("src", LoggerNames.APP_ROOT, 1)
    elif name == "__main__":
        app_name = LoggerNames.APP_ROOT
    elif LoggerNames.is_valid_logger_name(name):
        app_name = name
    else:
        app_name = f"{LoggerNames.APP_ROOT}.{name}"
    return logging.getLogger(app_name)


def set_module_level(module_name: str, level: str) -> None:
    """
    Set log level for a logger at runtime.

    Raises:
        ValueError: If the level is unknown
    """
    log_level = LogLevel.from_string(level)
    logging.getLogger(module_name).setLevel(log_level.name)


def _package_loggers() -> Dict[str, logging.Logger]:
    return {
        name: logger
        for name, logger in logging.Logger.manager.loggerDict.items()
        if isinstance(logger, logging.Logger)
        and LoggerNames.is_valid_logger_name(name)
    }


def get_module_levels() -> Dict[str, str]:
    """Explicitly set levels of the package loggers."""
    return {
        name: logging.getLevelName(logger.level).lower()
        for name, logger in _package_loggers().items()
        if logger.level != logging.NOTSET
    }


def reset_module_levels() -> None:
    """Reset all package logger levels to NOTSET."""
    for logger in _package_loggers().values():
        logger.setLevel(logging.NOTSET)
