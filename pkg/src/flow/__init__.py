from src.flow.allocation import (
    NodeCostFn,
    PriceMap,
    allocation_cost,
    node_cost_fn,
    offer_marginals,
    optimal_allocation,
)
from src.flow.routing import LinkCosts, Routing
from src.flow.social_optimum import (
    SocialOptimum,
    min_marginal_tree,
    path_marginal,
    path_min_marginals,
    socially_optimal_routing,
    solve_social_optimum,
)

__all__ = [
    "LinkCosts",
    "NodeCostFn",
    "PriceMap",
    "Routing",
    "SocialOptimum",
    "allocation_cost",
    "min_marginal_tree",
    "node_cost_fn",
    "offer_marginals",
    "optimal_allocation",
    "path_marginal",
    "path_min_marginals",
    "socially_optimal_routing",
    "solve_social_optimum",
]
