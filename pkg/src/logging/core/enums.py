#!/usr/bin/env python3
"""
Enums for the relay_pricing logging system.
"""

import logging
import re
from enum import Enum
from typing import Self


class _Named(Enum):
    """Enum parsed from its lowercase value."""

    @classmethod
    def from_string(cls, text: str) -> Self:
        try:
            return cls(text.strip().lower())
        except ValueError:
            valid = ", ".join(member.value for member in cls)
            label = re.sub(r"(?<!^)(?=[A-Z])", " ", cls.__name__).lower()
            raise ValueError(f"Invalid {label}: {text}. Valid: {valid}") from None

    def __str__(self) -> str:
        return self.value


class LogLevel(_Named):
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"

    @property
    def severity(self) -> int:
        """The stdlib numeric level; lower is more verbose."""
        return logging.getLevelName(self.name)


class SuppressionMode(_Named):
    """
    How much third-party logging is silenced.

    CLI keeps warnings from numerical libraries, LIBRARY (embedding the
    solvers in another program) silences everything below ERROR and
    DEVELOPMENT keeps almost everything.
    """

    CLI = "cli"
    LIBRARY = "library"
    DEVELOPMENT = "development"


class EnvironmentVariable(Enum):
    """Environment variables understood by the logging configuration."""

    LOG_LEVEL = "RELAY_PRICING_LOG_LEVEL"
    STRUCTURED_LOGGING = "RELAY_PRICING_STRUCTURED_LOGGING"
    LOG_FILE = "RELAY_PRICING_LOG_FILE"
    MODULE_LEVELS = "RELAY_PRICING_MODULE_LEVELS"
    EXTERNAL_SUPPRESSION_MODE = "RELAY_PRICING_EXTERNAL_SUPPRESSION_MODE"

    def __str__(self) -> str:
        return self.value
