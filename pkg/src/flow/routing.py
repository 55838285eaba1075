"""Link flow vectors and the quantities derived from them."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from src.errors import NetworkError
from src.marginals import MarginalFn
from src.network import Edge, Network, NodeId

LinkCosts = Mapping[Edge, MarginalFn]
"""Link cost marginals d_ij keyed by (tail, head); D_ij is their integral."""

FLOW_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class Routing:
    """Link flows of one session of rate ``session_rate`` leaving ``source``."""

    flows: Mapping[Edge, float]
    session_rate: float
    source: NodeId

    def __post_init__(self) -> None:
        clean = {
            (int(t), int(h)): max(float(f), 0.0) for (t, h), f in self.flows.items()
        }
        object.__setattr__(self, "flows", MappingProxyType(dict(sorted(clean.items()))))

    def flow(self, tail: NodeId, head: NodeId) -> float:
        return self.flows.get((tail, head), 0.0)

    def inflow(self, node: NodeId) -> float:
        return sum(f for (_, h), f in self.flows.items() if h == node)

    def outflow(self, node: NodeId) -> float:
        return sum(f for (t, _), f in self.flows.items() if t == node)

    def rate_of(self, node: NodeId) -> float:
        """r_i: the rate a node receives (R_s at the source)."""
        if node == self.source:
            return self.session_rate
        return self.inflow(node)

    def conservation_error(self, net: Network) -> float:
        """Largest imbalance between what a node receives and forwards."""
        worst = abs(self.outflow(net.source) - self.session_rate)
        worst = max(worst, abs(self.inflow(net.destination) - self.session_rate))
        for relay in net.relays:
            worst = max(worst, abs(self.inflow(relay) - self.outflow(relay)))
        return worst

    def check_links(self, net: Network) -> None:
        unknown = [e for e in self.flows if not net.has_edge(*e)]
        if unknown:
            raise NetworkError(f"Routing uses links missing from the network: {unknown}")

    def total_cost(self, link_costs: LinkCosts) -> float:
        """Σ D_ij(f_ij) over every link."""
        return float(
            sum(d.integral(self.flow(*edge)) for edge, d in link_costs.items())
        )

    def marginals(self, link_costs: LinkCosts) -> dict[Edge, float]:
        """d_ij(f_ij) per link."""
        return {edge: float(d(self.flow(*edge))) for edge, d in link_costs.items()}

    def max_difference(self, other: Routing) -> float:
        edges = set(self.flows) | set(other.flows)
        if not edges:
            return 0.0
        return max(abs(self.flow(*e) - other.flow(*e)) for e in edges)

    def is_close(self, other: Routing, atol: float) -> bool:
        return self.max_difference(other) <= atol

    def positive_offsprings(self, node: NodeId, atol: float = FLOW_EPS) -> list[NodeId]:
        return sorted(h for (t, h), f in self.flows.items() if t == node and f > atol)

    @classmethod
    def from_path_flows(
        cls,
        path_flows: Mapping[tuple[NodeId, ...], float],
        session_rate: float,
        source: NodeId,
    ) -> Routing:
        flows: dict[Edge, float] = {}
        for path, amount in path_flows.items():
            for edge in zip(path[:-1], path[1:]):
                flows[edge] = flows.get(edge, 0.0) + amount
        return cls(flows, session_rate, source)

    def describe(self, net: Network) -> dict[str, float]:
        return {net.edge_name(e): f for e, f in self.flows.items()}
