"""Elastic sources as inelastic games with an overflow link."""

from __future__ import annotations

from src.errors import AnalysisError
from src.flow import LinkCosts, Routing
from src.logging import get_logger
from src.marginals import MarginalFn
from src.network import Edge, Network

logger = get_logger(__name__)


def overflow_marginal(utility: MarginalFn, session_rate: float) -> MarginalFn:
    """d_sw(f) = u_s(R_s - f): the utility forgone by not admitting f."""
    if utility.domain_hi < session_rate * (1.0 - 1e-12):
        raise AnalysisError(
            f"Utility marginal covers [0, {utility.domain_hi}], "
            f"short of the session rate {session_rate}"
        )
    if utility.min_value() < 0.0:
        raise AnalysisError("Utility marginal must be nonnegative")
    overflow = utility.reflect(min(session_rate, utility.domain_hi))
    if not overflow.is_nondecreasing():
        raise AnalysisError("Utility marginal must be nonincreasing")
    return overflow


def elastic_transform(
    net: Network,
    link_costs: LinkCosts,
    utility: MarginalFn,
    session_rate: float,
) -> tuple[Network, dict[Edge, MarginalFn]]:
    """
    Add the overflow link s→w so that the elastic game becomes an ordinary
    one at the full rate R_s; flow on the overflow link is demand that is
    not admitted.

    Raises:
        AnalysisError: If s→w already exists or the utility marginal is
            negative or increasing.
    """
    s, w = net.source, net.destination
    if net.has_edge(s, w):
        raise AnalysisError("Network already links the source to the destination")
    overflow = overflow_marginal(utility, session_rate)
    costs = dict(link_costs)
    costs[(s, w)] = overflow
    logger.debug("Added overflow link with marginal %r", overflow)
    return net.with_edges([(s, w)]), costs


def admitted_rate(net: Network, routing: Routing) -> float:
    """Rate actually carried through the relays: R_s minus the overflow."""
    return routing.session_rate - routing.flow(net.source, net.destination)
