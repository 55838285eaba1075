"""
Pricing profiles and the routing they induce.

Prices are kept in the B-view: β_i^h already contains the marginal cost of
the link h→i, so a predecessor simply minimizes the sum of the integrals of
the prices it faces (with its own link cost to the destination standing in
for the destination's offer).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Optional

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import GameError
from src.flow import LinkCosts, Routing, offer_marginals, optimal_allocation
from src.logging import get_logger, log_operation
from src.marginals import MarginalFn
from src.network import Edge, Network, NodeId

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class PricingProfile:
    """
    One announced price marginal per (relay, predecessor) market.

    Attributes:
        prices: β_i^h keyed by (relay i, predecessor h), defined on [0, R_s].
        pinned_flows: Absolute link flows (tail, head) that select among
            equally cheap allocations when inducing the routing.
        label: Free-form name used in reports.
    """

    prices: Mapping[Edge, MarginalFn]
    pinned_flows: Mapping[Edge, float] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "prices", MappingProxyType(dict(self.prices)))
        object.__setattr__(
            self, "pinned_flows", MappingProxyType(dict(self.pinned_flows))
        )

    def price(self, relay: NodeId, predecessor: NodeId) -> MarginalFn:
        try:
            return self.prices[(relay, predecessor)]
        except KeyError:
            raise GameError(
                f"No price for relay {relay} towards predecessor {predecessor}"
            ) from None

    def pinned_for(self, node: NodeId) -> Optional[dict[NodeId, float]]:
        split = {h: f for (t, h), f in self.pinned_flows.items() if t == node}
        return split or None

    def with_pinned(self, flows: Mapping[Edge, float]) -> PricingProfile:
        return replace(self, pinned_flows=dict(flows))

    def with_price(
        self, relay: NodeId, predecessor: NodeId, price: MarginalFn
    ) -> PricingProfile:
        prices = dict(self.prices)
        prices[(relay, predecessor)] = price
        return replace(self, prices=prices)

    def check_complete(self, net: Network) -> None:
        """Every relay must price every one of its predecessors."""
        missing = [
            (net.name_of(i), net.name_of(h))
            for i in net.relays
            for h in sorted(net.predecessors(i))
            if (i, h) not in self.prices
        ]
        if missing:
            raise GameError(f"Profile lacks prices for markets {missing}")


def markets(net: Network) -> list[Edge]:
    """Every (relay, predecessor) pair of the network."""
    return [(i, h) for i in net.relays for h in sorted(net.predecessors(i))]


@log_operation("induced_routing")
def induced_routing(
    net: Network,
    profile: PricingProfile,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> Routing:
    """
    Route the session top-down, each node splitting what it receives at least
    cost against the prices it faces.

    Raises:
        AllocationError: If some node receives more than its offers absorb.
    """
    profile.check_complete(net)
    received: dict[NodeId, float] = {net.source: session_rate}
    flows: dict[Edge, float] = {}
    for node in net.topological_order():
        if node == net.destination:
            continue
        rate = received.get(node, 0.0)
        offers = offer_marginals(net, node, profile.prices, link_costs)
        split = optimal_allocation(
            node,
            rate,
            offers,
            grid_steps=config.grid_steps,
            pinned=profile.pinned_for(node),
            tol=config.tol,
        )
        for head, amount in split.items():
            flows[(node, head)] = amount
            received[head] = received.get(head, 0.0) + amount
    return Routing(flows, session_rate, net.source)
