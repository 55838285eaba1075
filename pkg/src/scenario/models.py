"""
Scenario file schema.

A scenario is a JSON document with ``"schema": 1``. Nodes are named by
strings; every cost or price is a tagged cost spec whose ``kind`` selects
the family. Unknown keys are rejected so typos surface as field errors.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, model_validator

SCHEMA_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class LinearCost(_Strict):
    """d(f) = a + b·f."""

    kind: Literal["linear"] = "linear"
    a: float
    b: float


class AffineShiftedCost(_Strict):
    """d(f) = a + b·(f - shift)."""

    kind: Literal["affine-shifted"] = "affine-shifted"
    a: float
    b: float
    shift: float


class BreakpointCost(_Strict):
    """Continuous interpolant through (x, y) points starting at x = 0."""

    kind: Literal["breakpoints"] = "breakpoints"
    points: list[tuple[float, float]] = Field(min_length=2)


class SegmentCost(_Strict):
    """Explicit (x_lo, x_hi, y_lo, y_hi) pieces; jumps allowed between them."""

    kind: Literal["segments"] = "segments"
    segments: list[tuple[float, float, float, float]] = Field(min_length=1)


class MM1Cost(_Strict):
    """Marginal of the M/M/1 occupancy f / (c - f)."""

    kind: Literal["mm1"] = "mm1"
    capacity: PositiveFloat
    utilization_cap: Optional[float] = Field(default=None, gt=0.0, lt=1.0)


class ExponentialCost(_Strict):
    """Marginal of the transmit power (2^(f/W) - 1) / K."""

    kind: Literal["exp"] = "exp"
    W: PositiveFloat
    K: PositiveFloat


class PowerCost(_Strict):
    """d(f) = a + b·f^p."""

    kind: Literal["power"] = "power"
    a: float = 0.0
    b: float
    p: float = Field(ge=0.0)


class ConstantCost(_Strict):
    kind: Literal["constant"] = "constant"
    value: float


CostSpec = Annotated[
    Union[
        LinearCost,
        AffineShiftedCost,
        BreakpointCost,
        SegmentCost,
        MM1Cost,
        ExponentialCost,
        PowerCost,
        ConstantCost,
    ],
    Field(discriminator="kind"),
]


class LinkSpec(_Strict):
    tail: str
    head: str
    cost: CostSpec


class PriceSpec(_Strict):
    """β_relay^predecessor, the announced marginal including the link cost."""

    relay: str
    predecessor: str
    price: CostSpec


class PinnedFlow(_Strict):
    tail: str
    head: str
    flow: float = Field(ge=0.0)


class ProfileSpec(_Strict):
    label: str = ""
    prices: list[PriceSpec]
    pinned_flows: list[PinnedFlow] = Field(default_factory=list)


class SettingsOverride(_Strict):
    """Per-scenario overrides of the solver configuration."""

    grid_steps: Optional[int] = Field(default=None, gt=0)
    tol: Optional[PositiveFloat] = None
    flow_tol: Optional[PositiveFloat] = None
    max_iterations: Optional[int] = Field(default=None, gt=0)
    samples: Optional[int] = Field(default=None, gt=0)
    domain_factor: Optional[float] = Field(default=None, ge=1.0)
    utilization_cap: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    box_budget: Optional[int] = Field(default=None, gt=0)
    predecessor_cap: Optional[int] = Field(default=None, gt=0)
    slack_fraction: Optional[PositiveFloat] = None


class Scenario(_Strict):
    """
    A relay pricing game on one unicast session.

    Attributes:
        schema_version: Always 1; serialised as ``schema``.
        name: Free-form label.
        source: Name of the source node s.
        destination: Name of the destination node w.
        session_rate: R_s.
        links: Every directed link with its cost marginal.
        utility: Marginal utility of an elastic source. When present the
            game gets an overflow link s→w.
        profile: A pricing profile shipped with the scenario.
        tie_breaks: Pinned link flows used when a profile has none for a node.
        settings: Solver overrides.
    """

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    name: str = ""
    source: str
    destination: str
    session_rate: PositiveFloat
    links: list[LinkSpec] = Field(min_length=1)
    utility: Optional[CostSpec] = None
    profile: Optional[ProfileSpec] = None
    tie_breaks: list[PinnedFlow] = Field(default_factory=list)
    settings: SettingsOverride = Field(default_factory=SettingsOverride)

    @model_validator(mode="after")
    def _distinct_links(self) -> Scenario:
        seen = set()
        for link in self.links:
            key = (link.tail, link.head)
            if key in seen:
                raise ValueError(f"Duplicate link {link.tail}->{link.head}")
            seen.add(key)
        if self.source == self.destination:
            raise ValueError("Source and destination must differ")
        return self


class ProfileFile(_Strict):
    """A pricing profile stored on its own, for ``verify`` and ``poa``."""

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    profile: ProfileSpec
