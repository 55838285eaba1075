"""
Report structures shared by the game, analysis and CLI layers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


def _rounded(value: Any) -> Any:
    """Round floats to 9 significant digits, recursively."""
    if isinstance(value, float):
        return float(f"{value:.9g}")
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


class _JsonReport:
    def to_dict(self) -> Dict[str, Any]:
        return _rounded(asdict(self))

    def __str__(self) -> str:
        """Return a JSON representation of the report."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)


@dataclass
class RelayDiagnostic(_JsonReport):
    """
    Verification outcome for one relay.

    Attributes:
        relay: Relay name.
        lower_bound_violation: Largest amount by which the relay's price
            integral falls below the reflected competitor curve.
        equality_violation: Largest gap between the two at the induced flows.
        profit_gap: How much more the relay could anticipate earning at its
            ideal flows than at the induced ones.
        honest_violation: Largest distance from honest pricing over the
            markets without traffic.
        induced_flows: f_hi per predecessor under the induced routing.
        ideal_flows: f̃_hi per predecessor; a profitable deviation when
            profit_gap exceeds the tolerance.
    """

    relay: str
    lower_bound_violation: float = 0.0
    equality_violation: float = 0.0
    profit_gap: float = 0.0
    honest_violation: float = 0.0
    induced_flows: Dict[str, float] = field(default_factory=dict)
    ideal_flows: Dict[str, float] = field(default_factory=dict)
    anticipated_profit: float = 0.0
    induced_profit: float = 0.0
    passed: bool = True

    @property
    def worst_violation(self) -> float:
        return max(
            self.lower_bound_violation,
            self.equality_violation,
            self.profit_gap,
            self.honest_violation,
        )


@dataclass
class EquilibriumReport(_JsonReport):
    """
    Verdict on a pricing profile.

    Attributes:
        label: Profile label.
        verified: Every relay passed within tolerance.
        worst_violation: Largest violation over all relays and conditions.
        worst_relay: Relay holding worst_violation.
        efficient: The induced routing matches the social optimum.
        structure: Primary structure class of the induced routing.
        structure_flags: All structure predicates of the induced routing.
        total_cost: Network cost of the induced routing.
        optimal_cost: Socially optimal network cost.
        poa_contribution: total_cost / optimal_cost.
        flows: Induced link flows by link name.
        relays: Per-relay diagnostics.
        notes: Free-form remarks, e.g. why the routing could not be induced.
    """

    label: str
    verified: bool
    worst_violation: float
    worst_relay: Optional[str]
    efficient: bool
    structure: str
    structure_flags: Dict[str, bool]
    total_cost: float
    optimal_cost: float
    poa_contribution: float
    flows: Dict[str, float] = field(default_factory=dict)
    relays: List[RelayDiagnostic] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def efficiency_class(self) -> str:
        return "efficient" if self.efficient else "inefficient"

    def failing_relays(self) -> List[str]:
        return [r.relay for r in self.relays if not r.passed]


@dataclass
class EquilibriumCost(_JsonReport):
    label: str
    total_cost: float
    verified: bool


@dataclass
class PriceOfAnarchyReport(_JsonReport):
    """
    Attributes:
        ratio: Worst supplied equilibrium cost over the optimal cost. It is a
            lower bound on the price of anarchy, which ranges over every
            equilibrium.
    """

    ratio: float
    optimal_cost: float
    equilibria: List[EquilibriumCost] = field(default_factory=list)
    lower_bound: bool = True


@dataclass
class BoundCheckReport(_JsonReport):
    shape: str
    n_relays: int
    ratio: float
    bound: Optional[float]
    holds: bool
    verified: bool


@dataclass
class SweepRow(_JsonReport):
    param: float
    opt_cost: float
    eq_cost: float
    poa: float


@dataclass
class SuiteReport(_JsonReport):
    """Outcome of a randomized property suite."""

    suite: str
    trials: int
    seed: int
    checked: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


@dataclass
class OptimumReport(_JsonReport):
    """
    Socially optimal routing of a scenario.

    Attributes:
        least_marginals: λ_h* per node, the least path marginal cost from h
            to the destination at the optimum.
        admitted_rate: Rate carried by the relays when the source is elastic.
    """

    scenario: str
    session_rate: float
    cost: float
    gap: float
    iterations: int
    flows: Dict[str, float] = field(default_factory=dict)
    least_marginals: Dict[str, float] = field(default_factory=dict)
    admitted_rate: Optional[float] = None


@dataclass
class PriceSummary(_JsonReport):
    relay: str
    predecessor: str
    at_zero: float
    at_rate: float
    constant: bool


@dataclass
class ConstructionReport(_JsonReport):
    """A constructed equilibrium: its prices and its verification report."""

    scheme: str
    prices: List[PriceSummary]
    equilibrium: EquilibriumReport
