from src.game.best_response import (
    BestResponseResult,
    anticipated_profit,
    fit_domain,
    forwarding_cost,
    honest_pricing,
    ideal_flows,
    replicating_response,
)
from src.game.construction import (
    MARGINAL_COST,
    MONOPOLISTIC,
    construct_marginal_cost_equilibrium,
    construct_monopolistic_equilibrium,
    lower_convex_minorant,
    oligopoly_path_marginals,
)
from src.game.local_info import (
    LocalInfo,
    Market,
    build_local_info,
    competitor_convolution,
    virtual_competitor,
)
from src.game.profile import PricingProfile, induced_routing, markets
from src.game.verification import (
    check_relay,
    honest_recursion_check,
    verify_equilibrium,
)

__all__ = [
    "BestResponseResult",
    "LocalInfo",
    "MARGINAL_COST",
    "MONOPOLISTIC",
    "Market",
    "PricingProfile",
    "anticipated_profit",
    "build_local_info",
    "check_relay",
    "competitor_convolution",
    "construct_marginal_cost_equilibrium",
    "construct_monopolistic_equilibrium",
    "fit_domain",
    "forwarding_cost",
    "honest_pricing",
    "honest_recursion_check",
    "ideal_flows",
    "induced_routing",
    "lower_convex_minorant",
    "markets",
    "oligopoly_path_marginals",
    "replicating_response",
    "verify_equilibrium",
]
