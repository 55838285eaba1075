"""
Best responses of a single relay.

Given its local information a relay can anticipate at most

    Γ̄(f) = Σ_h [B̂_h(r_h) - B̂_h(r_h - f_h) - D_hi(f_h)] - D_i(Σ_h f_h)

where B̂_h is the least cost at which h forwards r_h without it. The ideal
flows maximize Γ̄ over the box ∏_h [0, r_h]; the replicating response
announces the reflected competitor curve, which wins exactly those flows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import GameError
from src.flow import NodeCostFn, node_cost_fn
from src.game.local_info import LocalInfo, Market, competitor_convolution
from src.logging import get_logger
from src.marginals import CostIntegral, MarginalFn
from src.network import NodeId

logger = get_logger(__name__)

_TIE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class BestResponseResult:
    """
    Attributes:
        relay: The responding relay.
        ideal_flows: f̃_hi per predecessor (0 for markets with r_h = 0).
        anticipated_profit: Γ̄ at the ideal flows.
        responses: Announced price marginal per predecessor.
    """

    relay: NodeId
    ideal_flows: Mapping[NodeId, float]
    anticipated_profit: float
    responses: Mapping[NodeId, MarginalFn] = field(default_factory=dict)


def fit_domain(fn: MarginalFn, upper: float) -> MarginalFn:
    """Cut or constantly continue ``fn`` so that it lives on [0, upper]."""
    if fn.domain_hi > upper:
        return fn.restrict(upper)
    return fn.extend(upper)


def forwarding_cost(
    local: LocalInfo, r_max: float, grid_steps: Optional[int] = None
) -> NodeCostFn:
    """D_i on [0, r_max], shortened to what the relay's offers can absorb."""
    capacity = sum(o.domain_hi for o in local.offers.values())
    return node_cost_fn(local.relay, local.offers, min(r_max, capacity), grid_steps)


def _market_terms(
    market: Market, competitor: CostIntegral, flows: np.ndarray
) -> np.ndarray:
    r = market.rate
    return (
        competitor(r)
        - competitor(np.clip(r - flows, 0.0, r))
        - market.link_cost.integral(flows)
    )


def _forwarding_term(cost: NodeCostFn, totals: np.ndarray) -> np.ndarray:
    tol = 1e-12 * max(1.0, cost.domain_hi)
    inside = totals <= cost.domain_hi + tol
    out = np.full(totals.shape, np.inf)
    out[inside] = cost.cost(np.minimum(totals[inside], cost.domain_hi))
    return out


def _competitors(
    local: LocalInfo, grid_steps: Optional[int]
) -> dict[NodeId, CostIntegral]:
    return {
        m.predecessor: competitor_convolution(m, grid_steps).cost
        for m in local.active_markets()
    }


def anticipated_profit(
    local: LocalInfo,
    flows: Mapping[NodeId, float],
    config: Configuration = DEFAULT_CONFIGURATION,
    competitors: Optional[Mapping[NodeId, CostIntegral]] = None,
    forwarding: Optional[NodeCostFn] = None,
) -> float:
    """Γ̄ at the given per-predecessor flows."""
    active = local.active_markets()
    if not active:
        return 0.0
    competitors = competitors or _competitors(local, config.grid_steps)
    forwarding = forwarding or forwarding_cost(
        local, sum(m.rate for m in active), config.grid_steps
    )
    total = 0.0
    for m in active:
        f = np.array([min(max(flows.get(m.predecessor, 0.0), 0.0), m.rate)])
        total += float(_market_terms(m, competitors[m.predecessor], f)[0])
    volume = sum(min(max(flows.get(m.predecessor, 0.0), 0.0), m.rate) for m in active)
    return total - float(_forwarding_term(forwarding, np.array([volume]))[0])


def _box_search(
    active: list[Market],
    competitors: Mapping[NodeId, CostIntegral],
    forwarding: NodeCostFn,
    points: int,
) -> tuple[np.ndarray, float]:
    axes = [np.linspace(0.0, m.rate, points + 1) for m in active]
    terms = [
        _market_terms(m, competitors[m.predecessor], axis)
        for m, axis in zip(active, axes)
    ]
    separable = sum(np.meshgrid(*terms, indexing="ij"))
    totals = sum(np.meshgrid(*axes, indexing="ij"))
    values = separable - _forwarding_term(forwarding, totals)

    best = float(values.max())
    near = np.argwhere(values >= best - _TIE_RTOL * (1.0 + abs(best)))
    # argwhere walks the box in lexicographic order, so argmin keeps the
    # lexicographically smallest of the least-volume maximizers.
    pick = near[int(np.argmin(totals[tuple(near.T)]))]
    flows = np.array([axis[k] for axis, k in zip(axes, pick)])
    return flows, best


def ideal_flows(
    local: LocalInfo,
    config: Configuration = DEFAULT_CONFIGURATION,
    competitors: Optional[Mapping[NodeId, CostIntegral]] = None,
) -> BestResponseResult:
    """
    Maximize Γ̄ over the box of predecessor rates by grid search.

    Raises:
        GameError: If more predecessors carry traffic than the box search
            allows, or a market with traffic has no competitor.
    """
    active = local.active_markets()
    zeros = {m.predecessor: 0.0 for m in local.markets}
    if not active:
        return BestResponseResult(local.relay, zeros, 0.0)
    if len(active) > config.predecessor_cap:
        raise GameError(
            f"Relay {local.relay} has {len(active)} predecessors with traffic, "
            f"above the cap of {config.predecessor_cap}"
        )
    competitors = competitors or _competitors(local, config.grid_steps)
    forwarding = forwarding_cost(
        local, sum(m.rate for m in active), config.grid_steps
    )
    points = max(1, min(config.grid_steps, int(config.box_budget ** (1.0 / len(active)))))
    flows, best = _box_search(active, competitors, forwarding, points)
    ideal = dict(zeros)
    ideal.update({m.predecessor: float(f) for m, f in zip(active, flows)})
    logger.debug(
        "Relay %s ideal flows %s, anticipated profit %.9g", local.relay, ideal, best
    )
    return BestResponseResult(local.relay, ideal, best)


def honest_pricing(
    local: LocalInfo,
    predecessor: NodeId,
    grid_steps: Optional[int] = None,
    forwarding: Optional[NodeCostFn] = None,
) -> MarginalFn:
    """
    β_i^h(t) = d_hi(t) + d_i(t + Σ_{h' ≠ h} f_h'i) on [0, R_s].

    ``forwarding`` is D_i; it is rebuilt from the relay's offers when absent.
    """
    market = local.market(predecessor)
    upper = local.session_rate
    others = local.other_intended(predecessor)
    forwarding = forwarding or forwarding_cost(local, upper + others, grid_steps)
    d_i = forwarding.marginal
    if others > 0.0:
        if others < d_i.domain_hi:
            d_i = d_i.shift(others)
        else:
            d_i = MarginalFn.constant(float(d_i.y_hi[-1]), upper)
    return fit_domain(market.link_cost, upper).add(fit_domain(d_i, upper))


def replicating_response(
    local: LocalInfo,
    config: Configuration = DEFAULT_CONFIGURATION,
    result: Optional[BestResponseResult] = None,
) -> BestResponseResult:
    """
    Announce β̂_h(r_h - t) on every market with traffic, continued as a
    constant up to R_s, and honest prices on markets without traffic.
    """
    result = result or ideal_flows(local, config)
    upper = local.session_rate
    responses: dict[NodeId, MarginalFn] = {}
    forwarding = None
    for m in local.markets:
        if m.rate > 0.0:
            competitor = competitor_convolution(m, config.grid_steps).marginal
            responses[m.predecessor] = fit_domain(competitor.reflect(m.rate), upper)
        else:
            forwarding = forwarding or forwarding_cost(
                local, 2.0 * upper, config.grid_steps
            )
            responses[m.predecessor] = honest_pricing(
                local, m.predecessor, config.grid_steps, forwarding
            )
    return BestResponseResult(
        local.relay, result.ideal_flows, result.anticipated_profit, responses
    )
