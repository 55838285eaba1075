#!/usr/bin/env python3
"""
Suppression strategies for the runtime contexts (CLI, embedded library,
development), one Strategy object per SuppressionMode.
"""

from abc import ABC, abstractmethod
from typing import Dict

from ..core.enums import LogLevel, SuppressionMode
from .external import ExternalLibrarySuppressor


class SuppressionStrategy(ABC):
    """Interface for applying one suppression mode."""

    @abstractmethod
    def levels(self) -> Dict[str, LogLevel]:
        """Library logger levels this strategy installs."""

    def apply_suppression(self) -> None:
        ExternalLibrarySuppressor.suppress_libraries(self.levels())


class CLISuppressionStrategy(SuppressionStrategy):
    def levels(self) -> Dict[str, LogLevel]:
        return ExternalLibrarySuppressor.get_cli_suppression_config()


class LibrarySuppressionStrategy(SuppressionStrategy):
    def levels(self) -> Dict[str, LogLevel]:
        return ExternalLibrarySuppressor.get_library_suppression_config()


class DevelopmentSuppressionStrategy(SuppressionStrategy):
    def levels(self) -> Dict[str, LogLevel]:
        return ExternalLibrarySuppressor.get_development_suppression_config()


_STRATEGIES: Dict[SuppressionMode, SuppressionStrategy] = {
    SuppressionMode.CLI: CLISuppressionStrategy(),
    SuppressionMode.LIBRARY: LibrarySuppressionStrategy(),
    SuppressionMode.DEVELOPMENT: DevelopmentSuppressionStrategy(),
}


def get_suppression_strategy(mode: SuppressionMode) -> SuppressionStrategy:
    """Get suppression strategy for the specified mode."""
    return _STRATEGIES[mode]
