"""Price of anarchy from explicit equilibria."""

from __future__ import annotations

from typing import Optional, Sequence

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import AnalysisError, UnverifiedEquilibriumError
from src.flow import LinkCosts, SocialOptimum, solve_social_optimum
from src.game import (
    PricingProfile,
    construct_monopolistic_equilibrium,
    oligopoly_path_marginals,
    verify_equilibrium,
)
from src.logging import get_logger, log_operation
from src.network import Network
from src.schemas.reports import (
    BoundCheckReport,
    EquilibriumCost,
    EquilibriumReport,
    PriceOfAnarchyReport,
)

logger = get_logger(__name__)


def ratio_from_reports(reports: Sequence[EquilibriumReport]) -> PriceOfAnarchyReport:
    """Worst verified cost over the optimum; every report must be verified."""
    if not reports:
        raise AnalysisError("Price of anarchy needs at least one equilibrium")
    unverified = [r.label or "<unnamed>" for r in reports if not r.verified]
    if unverified:
        raise UnverifiedEquilibriumError(
            f"Profiles failed verification: {', '.join(unverified)}"
        )
    optimal = reports[0].optimal_cost
    worst = max(r.total_cost for r in reports)
    ratio = worst / optimal if optimal > 0.0 else 1.0
    return PriceOfAnarchyReport(
        ratio=ratio,
        optimal_cost=optimal,
        equilibria=[EquilibriumCost(r.label, r.total_cost, r.verified) for r in reports],
    )


@log_operation("price_of_anarchy", summarize=lambda r: {"ratio": r.ratio})
def price_of_anarchy(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    equilibria: Sequence[PricingProfile],
    config: Configuration = DEFAULT_CONFIGURATION,
    optimum: Optional[SocialOptimum] = None,
) -> PriceOfAnarchyReport:
    """
    Largest total cost among ``equilibria`` divided by the optimal cost.

    This is a lower bound on the price of anarchy, which ranges over every
    equilibrium of the game.

    Raises:
        AnalysisError: On an empty list.
        UnverifiedEquilibriumError: If some profile is not an equilibrium.
    """
    if not equilibria:
        raise AnalysisError("Price of anarchy needs at least one equilibrium")
    optimum = optimum or solve_social_optimum(net, link_costs, session_rate, config)
    reports = [
        verify_equilibrium(net, p, link_costs, session_rate, config, optimum)
        for p in equilibria
    ]
    return ratio_from_reports(reports)


def marginal_shape(net: Network, link_costs: LinkCosts, session_rate: float) -> str:
    """linear, concave, convex or mixed, judged on the relay path marginals."""
    lam = oligopoly_path_marginals(net, link_costs, session_rate).values()
    concave = all(fn.is_concave() for fn in lam)
    convex = all(fn.is_convex() for fn in lam)
    if concave and convex:
        return "linear"
    if concave:
        return "concave"
    if convex:
        return "convex"
    return "mixed"


def poa_bound_check(
    net: Network,
    link_costs: LinkCosts,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> BoundCheckReport:
    """
    Measure the monopolistic equilibrium of an oligopoly against the number
    of relays, which bounds the ratio when every path marginal is concave.
    Convex and mixed oligopolies get the measured ratio with no bound.
    """
    shape = marginal_shape(net, link_costs, session_rate)
    n = len(net.relays)
    profile, _ = construct_monopolistic_equilibrium(net, link_costs, session_rate, config)
    report = verify_equilibrium(net, profile, link_costs, session_rate, config)
    bound = float(n) if shape in ("linear", "concave") else None
    holds = bound is None or report.poa_contribution <= bound + config.tol
    if not holds:
        logger.warning(
            "Ratio %.9g exceeds the relay count %s for a %s oligopoly",
            report.poa_contribution,
            n,
            shape,
        )
    return BoundCheckReport(
        shape=shape,
        n_relays=n,
        ratio=report.poa_contribution,
        bound=bound,
        holds=holds,
        verified=report.verified,
    )
