"""Exception hierarchy for the relay pricing solver."""

from __future__ import annotations

from typing import Optional


class RelayPricingError(Exception):
    """Base class for every error raised by this package."""


class NetworkError(RelayPricingError):
    """Unknown node ids or a topology that cannot be ordered."""


class DomainError(RelayPricingError):
    """A marginal function was evaluated outside its domain."""


class ConvolutionError(RelayPricingError):
    """Infimal convolution called with no functions or too short domains."""


class AllocationError(RelayPricingError):
    """A node was asked to forward more than its offers can absorb."""


class InfeasibleRoutingError(RelayPricingError):
    """The session rate cannot be placed within the link cost domains."""


class ConvergenceError(RelayPricingError):
    """The social optimum solver ran out of iterations."""

    def __init__(self, message: str, gap: float, iterations: int):
        super().__init__(message)
        self.gap = gap
        self.iterations = iterations


class GameError(RelayPricingError):
    """The local game of a relay is not well defined."""


class ConstructionError(RelayPricingError):
    """An equilibrium construction cannot be carried out for the input."""


class AnalysisError(RelayPricingError):
    """Bad parameters for an analysis or example generator."""


class UnverifiedEquilibriumError(AnalysisError):
    """A profile passed as an equilibrium failed verification."""


class ScenarioError(RelayPricingError):
    """A scenario or profile file could not be parsed or validated."""

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        field: Optional[str] = None,
        line: Optional[int] = None,
    ):
        location = []
        if path:
            location.append(str(path))
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field {field}")
        prefix = f"{': '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.path = path
        self.field = field
        self.line = line
