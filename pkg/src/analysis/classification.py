"""Structure classes of a routing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from src.flow import Routing
from src.network import Network, NodeId


@dataclass(frozen=True)
class RoutingStructure:
    """
    Attributes:
        monopolistic: One relay receives the whole session from the source.
        competitive: At least two relays receive traffic from the source.
        everywhere_competitive: Every node with traffic splits it across two
            or more offsprings, or sends some of it straight to the
            destination.
        dominant: The relay that takes everything at the first node where
            the routing is not competitive, if any.
    """

    monopolistic: bool
    competitive: bool
    everywhere_competitive: bool
    dominant: Optional[NodeId] = None

    @property
    def primary(self) -> str:
        if self.everywhere_competitive:
            return "everywhere-competitive"
        if self.monopolistic:
            return "monopolistic"
        if self.competitive:
            return "competitive"
        return "other"

    def flags(self) -> dict[str, bool]:
        return {
            "monopolistic": self.monopolistic,
            "competitive": self.competitive,
            "everywhere_competitive": self.everywhere_competitive,
        }


def classify(net: Network, routing: Routing, tol: float) -> RoutingStructure:
    s, w = net.source, net.destination
    carriers = [j for j in routing.positive_offsprings(s, tol) if j != w]
    monopolistic = any(
        routing.flow(s, j) >= routing.session_rate - tol for j in carriers
    )
    competitive = len(carriers) >= 2

    everywhere = True
    dominant = None
    for node in net.topological_order():
        if node == w or routing.rate_of(node) <= tol:
            continue
        used = routing.positive_offsprings(node, tol)
        if w in used or len(used) >= 2:
            continue
        everywhere = False
        if dominant is None and used:
            dominant = used[0]
    return RoutingStructure(monopolistic, competitive, everywhere, dominant)
