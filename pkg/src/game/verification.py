"""
Equilibrium verification.

A profile is an equilibrium when every relay's announced prices are a best
response to its local information. For each relay and each market h with
traffic this checks, on the convolution grid plus every breakpoint:

- the price integral never drops below the reflected competitor curve,
  B_i^h(t) >= B̂(r_h) - B̂(r_h - t);
- the two agree at the induced flow f_hi;
- no point of the Γ̄ box beats Γ̄ at the induced flows.

Markets without traffic must be priced honestly.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import AllocationError, GameError
from src.flow import LinkCosts, Routing, SocialOptimum, solve_social_optimum
from src.flow.social_optimum import path_min_marginals
from src.game.best_response import (
    anticipated_profit,
    forwarding_cost,
    honest_pricing,
    ideal_flows,
)
from src.game.local_info import LocalInfo, Market, build_local_info, competitor_convolution
from src.game.profile import PricingProfile, induced_routing
from src.logging import get_logger, log_operation
from src.marginals import CostIntegral, MarginalFn, merge_breakpoints
from src.network import Network, NodeId
from src.schemas.reports import EquilibriumReport, RelayDiagnostic

logger = get_logger(__name__)


def _check_points(
    market: Market, price: MarginalFn, competitor: CostIntegral, steps: int
) -> np.ndarray:
    r = market.rate
    mirrored = r - competitor.marginal.x
    return merge_breakpoints(
        np.linspace(0.0, r, steps + 1),
        price.x[price.x <= r],
        mirrored[(mirrored >= 0.0) & (mirrored <= r)],
        [min(market.intended_flow, r)],
        upper=r,
    )


def _market_violations(
    market: Market, price: MarginalFn, config: Configuration
) -> tuple[float, float, CostIntegral]:
    competitor = competitor_convolution(market, config.grid_steps).cost
    r = market.rate
    points = _check_points(market, price, competitor, config.grid_steps)
    reflected = competitor(r) - competitor(np.clip(r - points, 0.0, r))
    below = float(np.max(reflected - price.integral(points)))
    f = min(market.intended_flow, r)
    gap = abs(price.integral(f) - (competitor(r) - competitor(max(r - f, 0.0))))
    return max(below, 0.0), float(gap), competitor


def _honest_violation(
    local: LocalInfo, profile: PricingProfile, market: Market, config: Configuration
) -> float:
    honest = honest_pricing(local, market.predecessor, config.grid_steps)
    announced = profile.price(local.relay, market.predecessor)
    upper = min(honest.domain_hi, announced.domain_hi)
    xs = merge_breakpoints(honest.x, announced.x, upper=upper)
    mids = 0.5 * (xs[:-1] + xs[1:])
    return float(np.max(np.abs(honest(mids) - announced(mids))))


def check_relay(
    net: Network,
    relay: NodeId,
    profile: PricingProfile,
    link_costs: LinkCosts,
    routing: Routing,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> RelayDiagnostic:
    """Best-response conditions for one relay at the induced routing."""
    local = build_local_info(net, relay, profile.prices, link_costs, routing)
    name = net.name_of
    diag = RelayDiagnostic(
        relay=name(relay),
        induced_flows={name(m.predecessor): m.intended_flow for m in local.markets},
    )
    flow_eps = config.flow_tol * max(1.0, routing.session_rate)
    competitors: dict[NodeId, CostIntegral] = {}
    for market in local.markets:
        if market.rate > flow_eps:
            below, gap, competitor = _market_violations(
                market, profile.price(relay, market.predecessor), config
            )
            competitors[market.predecessor] = competitor
            diag.lower_bound_violation = max(diag.lower_bound_violation, below)
            diag.equality_violation = max(diag.equality_violation, gap)
        else:
            diag.honest_violation = max(
                diag.honest_violation,
                _honest_violation(local, profile, market, config),
            )

    active = [m for m in local.markets if m.predecessor in competitors]
    if active:
        trimmed = LocalInfo(
            relay, tuple(active), local.offers, local.session_rate, routing
        )
        forwarding = forwarding_cost(
            trimmed, sum(m.rate for m in active), config.grid_steps
        )
        best = ideal_flows(trimmed, config, competitors)
        induced = {m.predecessor: m.intended_flow for m in active}
        at_induced = anticipated_profit(
            trimmed, induced, config, competitors, forwarding
        )
        diag.ideal_flows = {name(h): f for h, f in best.ideal_flows.items()}
        diag.anticipated_profit = best.anticipated_profit
        diag.induced_profit = at_induced
        diag.profit_gap = max(best.anticipated_profit - at_induced, 0.0)

    diag.passed = diag.worst_violation <= config.tol
    if not diag.passed:
        logger.info(
            "Relay %s fails best-response checks (worst violation %.3g)",
            diag.relay,
            diag.worst_violation,
        )
    return diag


def _failed_report(
    net: Network, profile: PricingProfile, optimum: SocialOptimum, reason: str
) -> EquilibriumReport:
    return EquilibriumReport(
        label=profile.label,
        verified=False,
        worst_violation=float("inf"),
        worst_relay=None,
        efficient=False,
        structure="other",
        structure_flags={},
        total_cost=float("nan"),
        optimal_cost=optimum.cost,
        poa_contribution=float("nan"),
        notes=[reason],
    )


@log_operation(
    "verify_equilibrium",
    summarize=lambda r: {"verified": r.verified, "worst_violation": r.worst_violation},
)
def verify_equilibrium(
    net: Network,
    profile: PricingProfile,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
    optimum: Optional[SocialOptimum] = None,
) -> EquilibriumReport:
    """
    Check that ``profile`` is an equilibrium and describe what it induces.

    Args:
        net: A validated network.
        profile: Prices for every market, optionally with pinned flows.
        link_costs: Link cost marginals.
        session_rate: R_s.
        config: Grid, tolerances and the box search budget.
        optimum: Precomputed social optimum, solved here when absent.

    Returns:
        A report; failures are carried in it rather than raised.
    """
    # Import here to avoid circular imports
    from src.analysis.classification import classify

    optimum = optimum or solve_social_optimum(net, link_costs, session_rate, config)
    try:
        profile.check_complete(net)
        routing = induced_routing(net, profile, link_costs, session_rate, config)
    except (GameError, AllocationError) as e:
        logger.warning("Profile %r cannot induce a routing: %s", profile.label, e)
        return _failed_report(net, profile, optimum, str(e))

    diagnostics = [
        check_relay(net, relay, profile, link_costs, routing, config)
        for relay in net.relays
    ]
    worst = max(diagnostics, key=lambda d: d.worst_violation, default=None)
    worst_violation = worst.worst_violation if worst else 0.0
    verified = all(d.passed for d in diagnostics)

    total = routing.total_cost(link_costs)
    structure = classify(net, routing, config.tol)
    efficient = routing.is_close(optimum.routing, 10.0 * config.tol)
    ratio = total / optimum.cost if optimum.cost > 0.0 else 1.0
    report = EquilibriumReport(
        label=profile.label,
        verified=verified,
        worst_violation=worst_violation,
        worst_relay=worst.relay if worst and worst_violation > 0.0 else None,
        efficient=efficient,
        structure=structure.primary,
        structure_flags=structure.flags(),
        total_cost=total,
        optimal_cost=optimum.cost,
        poa_contribution=ratio,
        flows=routing.describe(net),
        relays=diagnostics,
    )
    logger.info(
        "Profile %r %s: cost %.9g, optimum %.9g, %s",
        profile.label,
        "verified" if verified else "rejected",
        total,
        optimum.cost,
        report.efficiency_class,
    )
    return report


def honest_recursion_check(
    net: Network,
    link_costs: LinkCosts,
    profile: PricingProfile,
    routing: Routing,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> dict[NodeId, float]:
    """
    |d_i(r_i) - λ_i| per relay at ``routing``, with d_i built from the
    profile's offers and λ_i the least path marginal from i.
    """
    least = path_min_marginals(net, routing, link_costs)
    deviations = {}
    for relay in net.relays:
        local = build_local_info(
            net, relay, profile.prices, link_costs, routing, include_competitors=False
        )
        r_i = routing.rate_of(relay)
        forwarding = forwarding_cost(local, max(r_i, routing.session_rate), config.grid_steps)
        d_i = forwarding.marginal
        value = d_i(min(r_i, d_i.domain_hi))
        deviations[relay] = abs(float(value) - least[relay])
    return deviations
