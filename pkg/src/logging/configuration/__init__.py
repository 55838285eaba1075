#!/usr/bin/env python3
"""
Logging configuration: environment reading, log file paths, configurator.
"""

from .environment import LoggingSettings, clear_environment_cache, read_environment
from .configurator import LoggingConfigurator
from .file_utils import LogFilePathGenerator

__all__ = [
    "clear_environment_cache",
    "read_environment",
    "LoggingSettings",
    "LoggingConfigurator",
    "LogFilePathGenerator",
]
