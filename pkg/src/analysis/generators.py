"""
Random games for the property suites.

Every generator takes a ``numpy.random.Generator`` and returns scenarios
whose numbers are rounded to six decimals, so a dumped counterexample
reloads to exactly the game that failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.analysis.examples import oligopoly_links, relay_names
from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import AnalysisError
from src.flow import Routing
from src.game import PricingProfile, build_local_info, replicating_response
from src.logging import get_logger
from src.network import Network, validate
from src.scenario import (
    ConstantCost,
    CostSpec,
    LinearCost,
    LinkSpec,
    PinnedFlow,
    PowerCost,
    PriceSpec,
    ProfileSpec,
    Scenario,
    build_marginal,
    compile_scenario,
    profile_to_spec,
)

logger = get_logger(__name__)

MAX_ATTEMPTS = 100
SHAPES = ("linear", "concave", "convex")


def _r(value: float) -> float:
    return round(float(value), 6)


def random_link_cost(rng: np.random.Generator) -> CostSpec:
    """Linear a + b·f, or a power a + b·f^p with p in [1, 2]."""
    a, b = _r(rng.uniform(0.0, 2.0)), _r(rng.uniform(0.5, 3.0))
    if rng.random() < 0.5:
        return LinearCost(a=a, b=b)
    return PowerCost(a=a, b=b, p=_r(rng.uniform(1.0, 2.0)))


def _layer_sizes(rng: np.random.Generator, max_relays: int) -> list[int]:
    sizes: list[int] = []
    for _ in range(int(rng.integers(1, 4))):
        size = int(rng.integers(2, 4))
        if sum(sizes) + size > max_relays:
            break
        sizes.append(size)
    return sizes or [2]


def _layered_edges(rng: np.random.Generator, sizes: list[int]) -> list[tuple[str, str]]:
    layers, first = [], 1
    for size in sizes:
        layers.append([f"v{k}" for k in range(first, first + size)])
        first += size

    edges = [("s", v) for v in layers[0]]
    for upper, lower in zip(layers, layers[1:] + [[]]):
        heads: dict[str, set[str]] = {u: set() for u in upper}
        for u in upper:
            if not lower:
                heads[u].add("w")
                continue
            if rng.random() < 0.3:
                heads[u].add("w")
                if rng.random() < 0.5:
                    continue
            k = int(rng.integers(2, len(lower) + 1))
            heads[u].update(rng.choice(lower, size=k, replace=False).tolist())
        for v in lower:
            if any(v in hs for hs in heads.values()):
                continue
            u = upper[int(rng.integers(len(upper)))]
            relays = heads[u] - {"w"}
            heads[u].add(v)
            if not relays:
                others = [x for x in lower if x != v]
                heads[u].add(others[int(rng.integers(len(others)))])
        for u in upper:
            edges += [(u, h) for h in sorted(heads[u])]
    return edges


def random_dag(
    rng: np.random.Generator,
    max_nodes: int = 10,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> Scenario:
    """
    Layered DAG with links only between adjacent layers and optional links
    to the destination, retried until it passes network validation.

    Layers hold two or three relays, so no relay has more than three
    predecessors.

    Raises:
        AnalysisError: If no valid network turns up within the attempt cap.
    """
    if max_nodes < 4:
        raise AnalysisError(f"A relay network needs at least 4 nodes, got {max_nodes}")
    for attempt in range(MAX_ATTEMPTS):
        edges = _layered_edges(rng, _layer_sizes(rng, max_nodes - 2))
        net = Network.from_edges(edges, "s", "w")
        if not validate(net).passed:
            logger.debug("Discarding invalid random network (attempt %s)", attempt)
            continue
        if any(len(net.predecessors(i)) > config.predecessor_cap for i in net.relays):
            continue
        return Scenario(
            name="random-dag",
            source="s",
            destination="w",
            session_rate=_r(rng.uniform(0.5, 2.0)),
            links=[LinkSpec(tail=t, head=h, cost=random_link_cost(rng)) for t, h in edges],
        )
    raise AnalysisError(f"No valid random network after {MAX_ATTEMPTS} attempts")


def _shaped_cost(rng: np.random.Generator, shape: str, intercept: float) -> CostSpec:
    b = _r(rng.uniform(0.5, 3.0))
    if shape == "linear":
        return LinearCost(a=intercept, b=b)
    if shape == "concave":
        return PowerCost(a=intercept, b=b, p=_r(rng.uniform(0.3, 0.95)))
    if shape == "convex":
        return PowerCost(a=intercept, b=b, p=_r(rng.uniform(1.2, 2.5)))
    raise AnalysisError(f"Unknown marginal shape {shape!r}; expected one of {SHAPES}")


def random_oligopoly(
    rng: np.random.Generator,
    shape: str = "linear",
    max_relays: int = 5,
    monopolistic_optimum: bool = False,
) -> Scenario:
    """
    Oligopoly whose path marginals all have the given shape.

    With ``monopolistic_optimum`` the first relay is cheap and every other
    relay starts above the first relay's marginal at the full session rate,
    so the optimum hands the whole session to relay r1.
    """
    n = int(rng.integers(2, max_relays + 1))
    R = _r(rng.uniform(0.5, 2.0))
    halves = [
        (_shaped_cost(rng, shape, _r(rng.uniform(0.0, 0.5))), _shaped_cost(rng, shape, 0.0))
        for _ in range(n)
    ]
    if monopolistic_optimum:
        first_in, first_out = halves[0]
        top = _spec_value(first_in, R) + _spec_value(first_out, R)
        halves = [halves[0]] + [
            (_shaped_cost(rng, shape, _r(1.5 * top + 1.0)), c_out) for _, c_out in halves[1:]
        ]
    return Scenario(
        name=f"random-{shape}-oligopoly",
        source="s",
        destination="w",
        session_rate=R,
        links=oligopoly_links(halves),
    )


def _spec_value(spec: CostSpec, f: float) -> float:
    if isinstance(spec, LinearCost):
        return spec.a + spec.b * f
    if isinstance(spec, PowerCost):
        return spec.a + spec.b * f**spec.p
    raise AnalysisError(f"Cannot evaluate {spec.kind} costs in closed form")


@dataclass(frozen=True)
class FocalOligopoly:
    """
    An oligopoly where relay r1 replicates the aggregate offer of the rest.

    Attributes:
        scenario: The game with the profile attached.
        optimal_flows: f_k* of the socially optimal routing, in relay order.
        shifted: Whether every price was moved off the optimum's marginal.
    """

    scenario: Scenario
    optimal_flows: tuple[float, ...]
    shifted: bool


def _linear_oligopoly(
    rng: np.random.Generator, n: int
) -> Optional[tuple[list[tuple[float, float]], float, list[float]]]:
    lines = [
        (_r(rng.uniform(0.0, 0.5)), 2.0 * _r(rng.uniform(0.25, 1.5))) for _ in range(n)
    ]
    R = _r(rng.uniform(0.5, 2.0))
    lam_star = (R + sum(a / b for a, b in lines)) / sum(1.0 / b for _, b in lines)
    flows = [(lam_star - a) / b for a, b in lines]
    if not all(0.05 * R < f < 0.95 * R for f in flows):
        return None
    return lines, R, flows


def focal_oligopoly(
    rng: np.random.Generator,
    config: Configuration = DEFAULT_CONFIGURATION,
    n_relays: Optional[int] = None,
) -> FocalOligopoly:
    """
    Linear oligopoly of two to four relays with an interior optimum, where
    relay r1 announces its replicating response to the others.

    Every other relay k prices the line through (f_k*, λ*) with a slope
    below that of λ_k, so the others split any total at equal prices and
    their aggregate offer at R_s - f_1* is λ*. Relay r1 then announces that
    aggregate read from the far end, which leaves the source indifferent
    about f_1; the profile pins the optimal split. Half the draws add a
    constant to every price, which moves each relay's ideal flow off the
    pinned split.
    """
    n = n_relays or int(rng.integers(2, 5))
    if n < 2:
        raise AnalysisError(f"A focal oligopoly needs at least two relays, got {n}")
    for _ in range(MAX_ATTEMPTS):
        drawn = _linear_oligopoly(rng, n)
        if drawn is not None:
            break
    else:
        raise AnalysisError(f"No interior optimum found for {n} relays")
    lines, R, flows = drawn
    a, b = lines[0]
    level = a + b * flows[0]
    shifted = bool(rng.random() < 0.5)
    if shifted:
        level += float(rng.choice([-1.0, 1.0]) * rng.uniform(0.05, 0.5) * level)

    names = relay_names(n)
    base = Scenario(
        name=f"focal-oligopoly-n{n}",
        source="s",
        destination="w",
        session_rate=R,
        links=oligopoly_links(
            [(LinearCost(a=a_k, b=b_k / 2), LinearCost(a=0.0, b=b_k / 2)) for a_k, b_k in lines]
        ),
    )
    problem = compile_scenario(base, config)
    net, s = problem.net, problem.net.source
    ids = [net.node_id(name) for name in names]

    pins = [_r(f) for f in flows[:-1]]
    pins.append(R - sum(pins))
    pinned = {(s, i): f for i, f in zip(ids, pins)}
    routing = Routing({**pinned, **{(i, net.destination): f for (_, i), f in pinned.items()}}, R, s)
    prices = {}
    for i, (_, b_k), f in zip(ids[1:], lines[1:], flows[1:]):
        slope = float(rng.uniform(0.0, 0.9)) * min(b_k, level / f)
        spec = LinearCost(a=_r(level - slope * f), b=_r(slope))
        prices[(i, s)] = build_marginal(spec, R, problem.config)
    local = build_local_info(net, ids[0], prices, problem.link_costs, routing)
    response = replicating_response(local, problem.config)
    prices[(ids[0], s)] = response.responses[s]

    profile = PricingProfile(prices, pinned, "focal-shifted" if shifted else "focal")
    scenario = base.model_copy(update={"profile": profile_to_spec(profile, net)})
    logger.debug("Drew focal oligopoly of %s relays (shifted=%s)", n, shifted)
    return FocalOligopoly(scenario, tuple(pins), shifted)


def perturbed_split_profile(
    rng: np.random.Generator, scenario: Scenario, level: float
) -> Scenario:
    """
    Attach a profile where every relay prices every market at the constant
    ``level`` and the source's split is drawn at random.
    """
    relays = sorted({link.head for link in scenario.links if link.tail == scenario.source})
    R = scenario.session_rate
    shares = [_r(w * R) for w in rng.dirichlet(np.ones(len(relays)))[:-1]]
    shares.append(max(R - sum(shares), 0.0))
    profile = ProfileSpec(
        label="constant-random-split",
        prices=[
            PriceSpec(relay=link.head, predecessor=link.tail, price=ConstantCost(value=level))
            for link in scenario.links
            if link.head != scenario.destination
        ],
        pinned_flows=[
            PinnedFlow(tail=scenario.source, head=j, flow=f) for j, f in zip(relays, shares)
        ],
    )
    return scenario.model_copy(update={"profile": profile})
