"""
Socially optimal routing by path-based flow deviation.

Each iteration prices every link at its current marginal cost, finds the
cheapest source to destination path by dynamic programming over the DAG,
and moves flow from the most expensive used path onto it. The step length
solves the one-dimensional first order condition exactly with brentq,
which is available because link marginals are piecewise linear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Mapping

import numpy as np
from scipy.optimize import brentq

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import ConvergenceError, InfeasibleRoutingError
from src.flow.routing import FLOW_EPS, LinkCosts, Routing
from src.logging import get_logger, log_operation
from src.network import Edge, Network, NodeId

logger = get_logger(__name__)

Path = tuple[NodeId, ...]
InitialFlow = Literal["shortest", "spread"]


@dataclass(frozen=True, eq=False)
class SocialOptimum:
    routing: Routing
    cost: float
    gap: float
    iterations: int
    path_flows: Mapping[Path, float] = field(default_factory=dict)


def _edges(path: Path) -> list[Edge]:
    return list(zip(path[:-1], path[1:]))


def _marginal_at(link_costs: LinkCosts, edge: Edge, flow: float) -> float:
    d = link_costs[edge]
    return float(d(min(max(flow, 0.0), d.domain_hi)))


def min_marginal_tree(
    net: Network, marginals: Mapping[Edge, float]
) -> tuple[dict[NodeId, float], dict[NodeId, NodeId]]:
    """
    Least marginal cost from every node to the destination and the next hop
    achieving it, ties to the smallest offspring id.
    """
    best: dict[NodeId, float] = {net.destination: 0.0}
    next_hop: dict[NodeId, NodeId] = {}
    for node in net.reverse_topological_order():
        if node == net.destination:
            continue
        choices = [
            (marginals[(node, k)] + best[k], k)
            for k in sorted(net.offsprings(node))
            if k in best
        ]
        if not choices:
            continue
        value, hop = min(choices)
        best[node] = value
        next_hop[node] = hop
    return best, next_hop


def _follow(net: Network, next_hop: Mapping[NodeId, NodeId]) -> Path:
    path = [net.source]
    while path[-1] != net.destination:
        path.append(next_hop[path[-1]])
    return tuple(path)


def _link_flows(path_flows: Mapping[Path, float]) -> dict[Edge, float]:
    flows: dict[Edge, float] = {}
    for path, amount in path_flows.items():
        for edge in _edges(path):
            flows[edge] = flows.get(edge, 0.0) + amount
    return flows


def _fits(path_flows: Mapping[Path, float], link_costs: LinkCosts) -> bool:
    return all(
        f <= link_costs[e].domain_hi * (1.0 + 1e-12)
        for e, f in _link_flows(path_flows).items()
    )


def _initial_path_flows(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    initial: InitialFlow,
) -> dict[Path, float]:
    if initial == "shortest":
        zero = {e: _marginal_at(link_costs, e, 0.0) for e in net.edges}
        _, next_hop = min_marginal_tree(net, zero)
        start = {_follow(net, next_hop): session_rate}
        if _fits(start, link_costs):
            return start
        logger.debug("Cheapest path cannot carry %s alone, spreading", session_rate)
    paths = list(net.paths())
    start = {p: session_rate / len(paths) for p in paths}
    if not _fits(start, link_costs):
        raise InfeasibleRoutingError(
            f"Session rate {session_rate} does not fit the link cost domains"
        )
    return start


def _step(
    flows: Mapping[Edge, float],
    link_costs: LinkCosts,
    gaining: list[Edge],
    losing: list[Edge],
    available: float,
) -> float:
    """
    Optimal amount to move from the losing links onto the gaining ones.

    The cost along the move is convex, so its minimizer is the root of the
    directional slope; brentq finds it in place of a golden-section search.
    """
    room = min(
        (link_costs[e].domain_hi - flows.get(e, 0.0) for e in gaining),
        default=available,
    )
    upper = min(available, room)
    if upper <= 0.0:
        raise InfeasibleRoutingError("Cheapest path is saturated at its domain limit")

    def slope(alpha: float) -> float:
        up = sum(_marginal_at(link_costs, e, flows.get(e, 0.0) + alpha) for e in gaining)
        down = sum(_marginal_at(link_costs, e, flows[e] - alpha) for e in losing)
        return up - down

    if slope(upper) <= 0.0:
        return upper
    return float(brentq(slope, 0.0, upper, xtol=1e-15 * max(1.0, upper)))


@log_operation(
    "social_optimum",
    summarize=lambda r: {"cost": r.cost, "gap": r.gap, "iterations": r.iterations},
)
def solve_social_optimum(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
    initial: InitialFlow = "shortest",
) -> SocialOptimum:
    """
    Minimize Σ D_ij(f_ij) over routings of ``session_rate``.

    Args:
        net: A validated network.
        link_costs: Strictly increasing link marginals on every edge.
        session_rate: R_s.
        config: Supplies flow_tol and max_iterations.
        initial: Start with everything on the cheapest zero-flow path, or
            spread evenly over all paths.

    Returns:
        The optimum with its certificate gap: the spread between the most
        expensive used path marginal and the cheapest path marginal.

    Raises:
        InfeasibleRoutingError: If the rate cannot be placed.
        ConvergenceError: If the gap stays above flow_tol.
    """
    if session_rate <= 0.0:
        routing = Routing({e: 0.0 for e in net.edges}, 0.0, net.source)
        return SocialOptimum(routing, 0.0, 0.0, 0)

    path_flows = _initial_path_flows(net, link_costs, session_rate, initial)
    gap = np.inf
    iterations = 0
    while True:
        flows = _link_flows(path_flows)
        marginals = {e: _marginal_at(link_costs, e, flows.get(e, 0.0)) for e in net.edges}
        best, next_hop = min_marginal_tree(net, marginals)
        cheapest = _follow(net, next_hop)
        priced = {
            p: sum(marginals[e] for e in _edges(p)) for p in path_flows
        }
        # Highest marginal first; among equals the lexicographically largest path.
        worst = max(priced, key=lambda p: (priced[p], p))
        gap = priced[worst] - best[net.source]
        if gap < config.flow_tol or worst == cheapest:
            break
        if iterations >= config.max_iterations:
            raise ConvergenceError(
                f"Social optimum did not converge: gap {gap:.3g} after "
                f"{iterations} iterations",
                gap=float(gap),
                iterations=iterations,
            )
        worst_edges = set(_edges(worst))
        cheap_edges = set(_edges(cheapest))
        alpha = _step(
            flows,
            link_costs,
            sorted(cheap_edges - worst_edges),
            sorted(worst_edges - cheap_edges),
            path_flows[worst],
        )
        path_flows[worst] -= alpha
        path_flows[cheapest] = path_flows.get(cheapest, 0.0) + alpha
        if path_flows[worst] <= FLOW_EPS * max(1.0, session_rate):
            leftover = path_flows.pop(worst)
            path_flows[cheapest] += leftover
        iterations += 1
        if iterations % 1000 == 0:
            logger.debug("Flow deviation iteration %s, gap %.3g", iterations, gap)

    link = _link_flows(path_flows)
    routing = Routing({e: link.get(e, 0.0) for e in net.edges}, session_rate, net.source)
    cost = routing.total_cost(link_costs)
    logger.info(
        "Social optimum: cost %.9g, gap %.3g after %s iterations", cost, gap, iterations
    )
    return SocialOptimum(routing, cost, float(gap), iterations, dict(path_flows))


def socially_optimal_routing(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
    initial: InitialFlow = "shortest",
) -> Routing:
    return solve_social_optimum(net, link_costs, session_rate, config, initial).routing


def path_min_marginals(
    net: Network, routing: Routing, link_costs: LinkCosts
) -> dict[NodeId, float]:
    """λ_i*: least marginal cost of any path from i to the destination at ``routing``."""
    best, _ = min_marginal_tree(net, routing.marginals(link_costs))
    return best


def path_marginal(
    path: Path, routing: Routing, link_costs: LinkCosts
) -> float:
    marginals = routing.marginals(link_costs)
    return sum(marginals[e] for e in _edges(path))
