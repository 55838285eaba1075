"""
Per-node cost minimizing allocation.

A node h facing offers B_k^h (price integrals in the B-view, so the link
cost to k is folded in; the destination's offer is D_hw itself) splits its
rate to minimize the sum of those offers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from src.errors import AllocationError, ConvolutionError
from src.flow.routing import LinkCosts
from src.logging import get_logger
from src.marginals import CostIntegral, MarginalFn, convolve
from src.network import Edge, Network, NodeId

logger = get_logger(__name__)

PriceMap = Mapping[Edge, MarginalFn]
"""Announced price marginals β_i^h keyed by (relay i, predecessor h)."""


@dataclass(frozen=True, eq=False)
class NodeCostFn:
    """D_i, the least cost of forwarding rate r_i through i's offers, and d_i."""

    node: NodeId
    cost: CostIntegral

    @property
    def marginal(self) -> MarginalFn:
        return self.cost.marginal

    @property
    def domain_hi(self) -> float:
        return self.cost.domain_hi


def offer_marginals(
    net: Network, node: NodeId, prices: PriceMap, link_costs: LinkCosts
) -> dict[NodeId, MarginalFn]:
    """β_k^node for every offspring k, with d_node,w standing in for w."""
    offers = {}
    for k in sorted(net.offsprings(node)):
        if k == net.destination:
            offers[k] = link_costs[(node, k)]
        else:
            try:
                offers[k] = prices[(k, node)]
            except KeyError:
                raise AllocationError(
                    f"No price announced by {net.name_of(k)} to {net.name_of(node)}"
                ) from None
    return offers


def allocation_cost(
    offers: Mapping[NodeId, MarginalFn], allocation: Mapping[NodeId, float]
) -> float:
    return float(sum(offers[k].integral(allocation.get(k, 0.0)) for k in offers))


def _usable_pin(
    node: NodeId,
    rate: float,
    order: list[NodeId],
    offers: Mapping[NodeId, MarginalFn],
    pinned: Mapping[NodeId, float],
    best_cost: float,
    tol: float,
) -> Optional[np.ndarray]:
    split = np.array([pinned.get(k, 0.0) for k in order])
    caps = np.array([offers[k].domain_hi for k in order])
    if np.any(split < 0.0) or np.any(split > caps + tol):
        logger.warning("Pinned flows of node %s leave the offer domains", node)
        return None
    if abs(split.sum() - rate) > tol * max(1.0, rate):
        logger.warning(
            "Pinned flows of node %s sum to %s, not the received rate %s",
            node,
            split.sum(),
            rate,
        )
        return None
    split = np.minimum(split, caps)
    split[int(np.argmax(split))] += rate - split.sum()
    cost = allocation_cost(offers, dict(zip(order, split)))
    if cost > best_cost + tol:
        logger.warning(
            "Pinned flows of node %s cost %s, above the optimum %s",
            node,
            cost,
            best_cost,
        )
        return None
    return split


def optimal_allocation(
    node: NodeId,
    rate: float,
    offers: Mapping[NodeId, MarginalFn],
    grid_steps: Optional[int] = None,
    pinned: Optional[Mapping[NodeId, float]] = None,
    tol: float = 1e-5,
) -> dict[NodeId, float]:
    """
    Split ``rate`` across ``offers`` at least total cost.

    Ties go to the lexicographically smallest split in ascending offspring
    id, unless ``pinned`` names an optimal split for this node.

    Raises:
        AllocationError: If the offers cannot absorb the rate.
    """
    order = sorted(offers)
    if not order:
        raise AllocationError(f"Node {node} has no offers to forward through")
    if rate <= 0.0:
        return {k: 0.0 for k in order}
    try:
        conv = convolve([offers[k].integral for k in order], rate, grid_steps)
    except ConvolutionError as e:
        raise AllocationError(f"Node {node} cannot forward rate {rate}: {e}") from e

    split = None
    if pinned:
        split = _usable_pin(node, rate, order, offers, pinned, conv.cost(rate), tol)
    if split is None:
        split = conv.allocate(rate)
    return {k: float(f) for k, f in zip(order, split)}


def node_cost_fn(
    node: NodeId,
    offers: Mapping[NodeId, MarginalFn],
    r_max: float,
    grid_steps: Optional[int] = None,
) -> NodeCostFn:
    """D_node on [0, r_max] as the infimal convolution of its offers."""
    order = sorted(offers)
    try:
        conv = convolve([offers[k].integral for k in order], r_max, grid_steps)
    except ConvolutionError as e:
        raise AllocationError(f"Node {node} cannot forward rate {r_max}: {e}") from e
    return NodeCostFn(node, conv.cost)
