"""Define the tunable parameters of the solvers."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Any, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.logging import get_logger

logger = get_logger(__name__)


class SolverSettings(BaseSettings):
    """Solver defaults read from RELAY_PRICING_* variables or a .env file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="RELAY_PRICING_",
        case_sensitive=False,
        validate_assignment=False,
        extra="ignore",
    )

    grid_steps: int = Field(default=2000, gt=0)
    tol: float = Field(default=1e-5, gt=0)
    flow_tol: float = Field(default=1e-6, gt=0)
    max_iterations: int = Field(default=100_000, gt=0)
    samples: int = Field(default=64, gt=0)
    domain_factor: float = Field(default=2.0, ge=1.0)
    utilization_cap: float = Field(default=0.95, gt=0, lt=1)
    box_budget: int = Field(default=1_000_000, gt=0)
    predecessor_cap: int = Field(default=3, gt=0)
    slack_fraction: float = Field(default=1e-3, ge=0)
    workers: int = Field(default=1, gt=0)


@dataclass(frozen=True, kw_only=True)
class Configuration:
    """Numerical knobs shared by every solver in the package."""

    grid_steps: int = field(
        default=2000,
        metadata={
            "description": "Steps of the grid used by the dynamic-program "
            "convolution, the Γ̄ box search and the verification checks."
        },
    )
    tol: float = field(
        default=1e-5,
        metadata={"description": "Absolute cost tolerance of equilibrium checks."},
    )
    flow_tol: float = field(
        default=1e-6,
        metadata={"description": "Stopping gap on path marginal costs."},
    )
    max_iterations: int = field(
        default=100_000,
        metadata={"description": "Iteration cap of the social optimum solver."},
    )
    samples: int = field(
        default=64,
        metadata={"description": "Segments used to sample nonlinear marginals."},
    )
    domain_factor: float = field(
        default=2.0,
        metadata={"description": "Link cost domain as a multiple of R_s."},
    )
    utilization_cap: float = field(
        default=0.95,
        metadata={"description": "Fraction of M/M/1 capacity kept in the domain."},
    )
    box_budget: int = field(
        default=1_000_000,
        metadata={"description": "Grid points allowed in one Γ̄ box search."},
    )
    predecessor_cap: int = field(
        default=3,
        metadata={"description": "Largest predecessor set a relay may have."},
    )
    slack_fraction: float = field(
        default=1e-3,
        metadata={
            "description": "Slack slope of the monopolistic price curve, "
            "relative to the mean slope of the dominant marginal."
        },
    )
    workers: int = field(
        default=1,
        metadata={"description": "Processes used by sweeps and trial suites."},
    )

    @classmethod
    def from_settings(
        cls, settings: Optional[SolverSettings] = None
    ) -> Configuration:
        """Create a Configuration from environment backed settings."""
        settings = settings or SolverSettings()
        values = settings.model_dump()
        names = {f.name for f in fields(cls) if f.init}
        logger.debug("Loaded solver settings: %s", values)
        return cls(**{k: v for k, v in values.items() if k in names})

    def with_overrides(self, **overrides: Any) -> Configuration:
        """Return a copy with every non-None override applied."""
        names = {f.name for f in fields(self) if f.init}
        unknown = set(overrides) - names
        if unknown:
            raise ValueError(f"Unknown configuration fields: {sorted(unknown)}")
        applied = {k: v for k, v in overrides.items() if v is not None}
        if applied:
            logger.debug("Applying configuration overrides: %s", applied)
        return replace(self, **applied)

    def grid_step(self, span: float) -> float:
        """Grid step for an interval of the given length."""
        return span / self.grid_steps if span > 0 else 0.0


DEFAULT_CONFIGURATION = Configuration()
