"""What a relay sees when it picks its prices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from src.errors import GameError
from src.flow import LinkCosts, Routing, offer_marginals
from src.flow.allocation import PriceMap
from src.marginals import Convolution, CostIntegral, MarginalFn, convolve
from src.network import Network, NodeId


@dataclass(frozen=True, eq=False)
class Market:
    """
    Relay i's market at predecessor h.

    Attributes:
        predecessor: h.
        rate: r_h, what h has to forward.
        link_cost: d_hi.
        competitors: β_j^h of i's siblings, with d_hw for the destination.
        intended_flow: f_hi under the routing the profile induces.
    """

    predecessor: NodeId
    rate: float
    link_cost: MarginalFn
    competitors: Mapping[NodeId, MarginalFn]
    intended_flow: float = 0.0


@dataclass(frozen=True, eq=False)
class LocalInfo:
    relay: NodeId
    markets: tuple[Market, ...]
    offers: Mapping[NodeId, MarginalFn]
    session_rate: float
    routing: Optional[Routing] = field(default=None, repr=False)

    def market(self, predecessor: NodeId) -> Market:
        for m in self.markets:
            if m.predecessor == predecessor:
                return m
        raise GameError(f"Relay {self.relay} has no market at {predecessor}")

    def active_markets(self, atol: float = 0.0) -> list[Market]:
        return [m for m in self.markets if m.rate > atol]

    def other_intended(self, predecessor: NodeId) -> float:
        """Σ of the intended flows from every other predecessor."""
        return sum(m.intended_flow for m in self.markets if m.predecessor != predecessor)


def build_local_info(
    net: Network,
    relay: NodeId,
    prices: PriceMap,
    link_costs: LinkCosts,
    routing: Routing,
    include_competitors: bool = True,
) -> LocalInfo:
    """
    Collect rates, sibling prices and offspring offers around ``relay``.

    With ``include_competitors`` off only the relay's own side is read, which
    is all honest pricing needs while sibling prices are still being built.
    """
    markets = []
    for h in sorted(net.predecessors(relay)):
        competitors = {}
        siblings = net.siblings(relay, h) if include_competitors else set()
        for j in sorted(siblings):
            if j == net.destination:
                competitors[j] = link_costs[(h, j)]
            else:
                competitors[j] = prices[(j, h)]
        markets.append(
            Market(
                predecessor=h,
                rate=routing.rate_of(h),
                link_cost=link_costs[(h, relay)],
                competitors=competitors,
                intended_flow=routing.flow(h, relay),
            )
        )
    return LocalInfo(
        relay=relay,
        markets=tuple(markets),
        offers=offer_marginals(net, relay, prices, link_costs),
        session_rate=routing.session_rate,
        routing=routing,
    )


def competitor_convolution(
    market: Market, grid_steps: Optional[int] = None
) -> Convolution:
    if not market.competitors:
        raise GameError(
            f"No competitor at predecessor {market.predecessor}: the aggregate "
            "competing offer is undefined for a monopoly market"
        )
    order = sorted(market.competitors)
    return convolve(
        [market.competitors[j].integral for j in order], market.rate, grid_steps
    )


def virtual_competitor(
    local: LocalInfo, predecessor: NodeId, grid_steps: Optional[int] = None
) -> CostIntegral:
    """B̂_i^h: least cost at which h forwards without using the relay."""
    return competitor_convolution(local.market(predecessor), grid_steps).cost
