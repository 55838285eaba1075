#!/usr/bin/env python3
"""
Third-party logger suppression.

The numerical stack logs little, but matplotlib (pulled in by plotting
scripts that read our CSV), hypothesis and concurrent.futures can be
chatty when the root level is lowered.
"""

import logging
from typing import Dict

from ..core.enums import LogLevel


class ExternalLibrarySuppressor:
    """Sets levels on loggers owned by other libraries."""

    @classmethod
    def suppress_libraries(cls, library_levels: Dict[str, LogLevel]) -> None:
        for library, level in library_levels.items():
            logging.getLogger(library).setLevel(level.name)

    @classmethod
    def get_cli_suppression_config(cls) -> Dict[str, LogLevel]:
        return {
            "matplotlib": LogLevel.WARNING,
            "PIL": LogLevel.WARNING,
            "hypothesis": LogLevel.WARNING,
            "concurrent.futures": LogLevel.WARNING,
            "asyncio": LogLevel.ERROR,
        }

    @classmethod
    def get_library_suppression_config(cls) -> Dict[str, LogLevel]:
        return {
            name: LogLevel.ERROR for name in cls.get_cli_suppression_config()
        } | {"numexpr": LogLevel.ERROR, "py.warnings": LogLevel.ERROR}

    @classmethod
    def get_development_suppression_config(cls) -> Dict[str, LogLevel]:
        return {"matplotlib": LogLevel.INFO, "PIL": LogLevel.INFO}
