"""Explicit equilibrium constructions."""

from __future__ import annotations

import numpy as np

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import ConstructionError
from src.flow import (
    LinkCosts,
    Routing,
    path_min_marginals,
    solve_social_optimum,
)
from src.game.best_response import fit_domain, forwarding_cost, honest_pricing
from src.game.local_info import build_local_info
from src.game.profile import PricingProfile
from src.logging import get_logger, log_operation
from src.marginals import MarginalFn, merge_breakpoints
from src.network import Edge, Network, NodeId

logger = get_logger(__name__)

MARGINAL_COST = "marginal-cost"
MONOPOLISTIC = "monopolistic"


@log_operation("construct_marginal_cost_equilibrium")
def construct_marginal_cost_equilibrium(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> tuple[PricingProfile, Routing]:
    """
    Price every market with traffic at the predecessor's least path marginal
    λ_h*, and every market without traffic honestly.

    Relays are priced in reverse topological order so that the offers an
    honest relay forwards through are known when it is priced. The socially
    optimal link flows are pinned, which makes the induced routing the
    optimum even where a predecessor is indifferent.

    Raises:
        ConvergenceError: If the social optimum does not converge.
    """
    optimum = solve_social_optimum(net, link_costs, session_rate, config)
    routing = optimum.routing
    least = path_min_marginals(net, routing, link_costs)
    flow_eps = config.flow_tol * max(1.0, session_rate)

    prices: dict[Edge, MarginalFn] = {}
    for relay in net.reverse_topological_order():
        if relay in (net.source, net.destination):
            continue
        predecessors = sorted(net.predecessors(relay))
        silent = [h for h in predecessors if routing.rate_of(h) <= flow_eps]
        forwarding = None
        if silent:
            local = build_local_info(
                net, relay, prices, link_costs, routing, include_competitors=False
            )
            forwarding = forwarding_cost(
                local, session_rate + routing.inflow(relay), config.grid_steps
            )
        for h in predecessors:
            if h in silent:
                prices[(relay, h)] = honest_pricing(
                    local, h, config.grid_steps, forwarding
                )
            else:
                prices[(relay, h)] = MarginalFn.constant(least[h], session_rate)

    profile = PricingProfile(prices, dict(routing.flows), MARGINAL_COST)
    logger.info(
        "Marginal cost pricing built for %s markets, λ_s* = %.9g",
        len(prices),
        least[net.source],
    )
    return profile, routing


def lower_convex_minorant(xs: np.ndarray, ys: np.ndarray) -> MarginalFn:
    """Slopes of the greatest convex minorant of the points (xs, ys)."""
    hull: list[int] = []
    for k in range(len(xs)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (xs[b] - xs[a]) * (ys[k] - ys[a]) - (ys[b] - ys[a]) * (xs[k] - xs[a])
            if cross > 0.0:
                break
            hull.pop()
        hull.append(k)
    hx = xs[hull]
    slopes = np.diff(ys[hull]) / np.diff(hx)
    return MarginalFn(hx, slopes, slopes)


def oligopoly_path_marginals(
    net: Network, link_costs: LinkCosts, session_rate: float
) -> dict[NodeId, MarginalFn]:
    """λ_j = d_sj + d_jw on [0, R_s] per relay of an oligopoly."""
    s, w = net.source, net.destination
    return {
        j: fit_domain(link_costs[(s, j)], session_rate).add(
            fit_domain(link_costs[(j, w)], session_rate)
        )
        for j in net.relays
    }


def _dominates(low: MarginalFn, high: MarginalFn, tol: float) -> bool:
    xs = merge_breakpoints(low.x, high.x, upper=min(low.domain_hi, high.domain_hi))
    lo_a, hi_a = low.values_on(xs)
    lo_b, hi_b = high.values_on(xs)
    return bool(np.all(lo_a <= lo_b + tol) and np.all(hi_a <= hi_b + tol))


@log_operation("construct_monopolistic_equilibrium")
def construct_monopolistic_equilibrium(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> tuple[PricingProfile, Routing]:
    """
    Build a common strictly decreasing price under which every relay of an
    oligopoly would rather not serve, except the relay m with the least
    total path cost, which is handed the whole session.

    The reflected price g satisfies ∫₀ᵗ g ≤ Λ_j(t) for every relay j, with
    equality at t = R_s for m. It is the slope of the greatest convex
    minorant of min_j Λ_j (just λ_m when λ_m lies below every other path
    marginal) plus a zero-mean increasing linear term.

    Raises:
        ConstructionError: On a network that is not an oligopoly, or when the
            sampled inequalities fail by more than tol.
    """
    if not net.is_oligopoly():
        raise ConstructionError(
            "Monopolistic construction needs an oligopoly: at least two relays "
            "between source and destination and no other links"
        )
    R = session_rate
    lam = oligopoly_path_marginals(net, link_costs, R)
    areas = {j: lam[j].integrate(0.0, R) for j in lam}
    m = min(lam, key=lambda j: (areas[j], j))
    lam_m = lam[m]

    grid = merge_breakpoints(
        np.linspace(0.0, R, config.grid_steps + 1),
        *(fn.x for fn in lam.values()),
        upper=R,
    )
    if all(_dominates(lam_m, lam[j], config.tol) for j in lam if j != m):
        base = lam_m
    else:
        envelope = np.min([lam[j].integral(grid) for j in lam], axis=0)
        base = lower_convex_minorant(grid, envelope)
        logger.debug("Relay %s not dominant pointwise, using convex minorant", m)

    spread = float(lam_m(R) - lam_m(0.0))
    if spread <= 0.0:
        spread = max(areas[m] / R, 1e-12)
    eps = config.slack_fraction * spread / R
    reflected = base.add(MarginalFn.linear(-0.5 * eps * R, eps, R))

    achieved = reflected.integral(grid)
    for j in lam:
        excess = float(np.max(achieved - lam[j].integral(grid)))
        if excess > config.tol:
            raise ConstructionError(
                f"Price curve undercuts relay {net.name_of(j)} by {excess:.3g}"
            )
    if abs(achieved[-1] - areas[m]) > config.tol:
        raise ConstructionError(
            f"Price curve misses the dominant area by {abs(achieved[-1] - areas[m]):.3g}"
        )

    price = reflected.reflect(R)
    s, w = net.source, net.destination
    prices = {(j, s): price for j in net.relays}
    flows = {(s, j): 0.0 for j in net.relays} | {(j, w): 0.0 for j in net.relays}
    flows[(s, m)] = R
    flows[(m, w)] = R
    logger.info(
        "Monopolistic equilibrium hands the session to relay %s (cost %.9g)",
        net.name_of(m),
        areas[m],
    )
    return PricingProfile(prices, flows, MONOPOLISTIC), Routing(flows, R, s)
