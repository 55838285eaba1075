"""
Named example games.

Each family produces a complete ``Scenario``: network, link cost specs and,
where the example is about one particular equilibrium, the pricing profile
with the pinned flows that select it.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Callable, Mapping, Optional

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import AnalysisError
from src.game import construct_monopolistic_equilibrium
from src.logging import get_logger
from src.marginals import power_marginal
from src.scenario import (
    AffineShiftedCost,
    ConstantCost,
    CostSpec,
    LinearCost,
    LinkSpec,
    PinnedFlow,
    PowerCost,
    PriceSpec,
    ProfileSpec,
    Scenario,
    SettingsOverride,
    compile_scenario,
    profile_to_spec,
)

logger = get_logger(__name__)

Params = Mapping[str, float]


class ExampleFamily(str, Enum):
    OLIGOPOLY_LINEAR = "oligopoly-linear"
    DUOPOLY_INEFFICIENT = "duopoly-inefficient"
    MYOPIC_GENERAL = "myopic-general"
    CONVEX_UNBOUNDED = "convex-unbounded"
    ELASTIC_OLIGOPOLY = "elastic-oligopoly"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str) -> ExampleFamily:
        for family in cls:
            if family.value == value.lower():
                return family
        valid_values = [f.value for f in cls]
        raise ValueError(f"Invalid example family: {value}. Valid values: {valid_values}")


def relay_names(n: int) -> list[str]:
    return [f"r{k}" for k in range(1, n + 1)]


def oligopoly_links(halves: list[tuple[CostSpec, CostSpec]]) -> list[LinkSpec]:
    """s→r_k with the first spec and r_k→w with the second, for each relay."""
    names = relay_names(len(halves))
    inbound = [LinkSpec(tail="s", head=n, cost=c) for n, (c, _) in zip(names, halves)]
    outbound = [LinkSpec(tail=n, head="w", cost=c) for n, (_, c) in zip(names, halves)]
    return inbound + outbound


def _relay_count(value: float, minimum: int = 2) -> int:
    n = int(value)
    if n != value or n < minimum:
        raise AnalysisError(f"Relay count must be an integer >= {minimum}, got {value}")
    return n


def _positive(params: Params, *names: str) -> None:
    for name in names:
        if not params[name] > 0.0:
            raise AnalysisError(f"Parameter {name} must be positive, got {params[name]}")


def oligopoly_linear(params: Params, config: Configuration) -> Scenario:
    """N symmetric relays with λ_k(r) = c·r, split evenly over both hops."""
    n = _relay_count(params["N"])
    _positive(params, "c", "R")
    half = LinearCost(a=0.0, b=params["c"] / 2.0)
    return Scenario(
        name=f"oligopoly-linear-n{n}",
        source="s",
        destination="w",
        session_rate=params["R"],
        links=oligopoly_links([(half, half)] * n),
    )


def duopoly_inefficient(params: Params, config: Configuration) -> Scenario:
    """
    Duopoly with λ_1(r) = a1·r and λ_2(r) = a2·r, shipped with the
    monopolistic equilibrium that hands everything to the cheaper relay.
    """
    _positive(params, "a1", "a2", "R")
    halves = [
        (LinearCost(a=0.0, b=params["a1"] / 2.0), LinearCost(a=0.0, b=params["a1"] / 2.0)),
        (LinearCost(a=0.0, b=params["a2"] / 2.0), LinearCost(a=0.0, b=params["a2"] / 2.0)),
    ]
    scenario = Scenario(
        name="duopoly-inefficient",
        source="s",
        destination="w",
        session_rate=params["R"],
        links=oligopoly_links(halves),
    )
    problem = compile_scenario(scenario, config)
    profile, _ = construct_monopolistic_equilibrium(
        problem.net, problem.link_costs, problem.session_rate, problem.config
    )
    return scenario.model_copy(update={"profile": profile_to_spec(profile, problem.net)})


def myopic_general_costs(
    M: float, eps: float, delta: float, R: float
) -> tuple[float, float]:
    """
    Closed-form (equilibrium cost, optimal cost) of the general game whose
    shipped equilibrium routes only ε/(2δ) over the efficient path.
    """
    x = eps / (2.0 * delta)
    y = R - x
    equilibrium = eps**2 / (2.0 * delta) + 2.0 * (M + eps - delta * R) * y + delta * y**2
    return equilibrium, 2.0 * delta * R**2


def myopic_general(params: Params, config: Configuration) -> Scenario:
    """
    Six-node game where a myopic source splits between an efficient relay h
    and an expensive relay g.

    Relay h can only win ε/(2δ) of the session against g's flat price
    because it must pay its own relays i and j a flat 2M. The shipped profile
    pins that split; every other flow on h's side goes through i.
    """
    M, eps, delta, R = params["M"], params["eps"], params["delta"], params["R"]
    _positive(params, "M", "eps", "delta", "R")
    if M < 100.0 * max(eps * R, delta * R):
        raise AnalysisError(
            f"M must dominate the other constants: need M >= 100·max(εR, δR) = "
            f"{100.0 * max(eps * R, delta * R):.6g}, got {M}"
        )
    x = eps / (2.0 * delta)
    if x >= R:
        raise AnalysisError(f"ε/(2δ) = {x:.6g} must be below the session rate {R}")

    def line(a: float, b: float) -> LinearCost:
        return LinearCost(a=a, b=b)

    links = [
        LinkSpec(tail="s", head="h", cost=line(0.0, 2.0 * delta)),
        LinkSpec(tail="s", head="g", cost=line(0.0, delta)),
        LinkSpec(tail="h", head="i", cost=line(0.0, delta)),
        LinkSpec(tail="h", head="j", cost=line(M, delta)),
        LinkSpec(tail="i", head="w", cost=line(0.0, delta)),
        LinkSpec(tail="j", head="w", cost=line(M, delta)),
        LinkSpec(
            tail="g",
            head="w",
            cost=AffineShiftedCost(a=2.0 * M + 2.0 * eps, b=delta, shift=2.0 * R),
        ),
    ]
    outer = ConstantCost(value=2.0 * M + eps)
    inner = ConstantCost(value=2.0 * M)
    profile = ProfileSpec(
        label="myopic-general",
        prices=[
            PriceSpec(relay="h", predecessor="s", price=outer),
            PriceSpec(relay="g", predecessor="s", price=outer),
            PriceSpec(relay="i", predecessor="h", price=inner),
            PriceSpec(relay="j", predecessor="h", price=inner),
        ],
        pinned_flows=[
            PinnedFlow(tail="s", head="h", flow=x),
            PinnedFlow(tail="s", head="g", flow=R - x),
            PinnedFlow(tail="h", head="i", flow=x),
            PinnedFlow(tail="h", head="j", flow=0.0),
        ],
    )
    return Scenario(
        name="myopic-general",
        source="s",
        destination="w",
        session_rate=R,
        links=links,
        profile=profile,
    )


def _integral_ratio(p: float, n: int, R: float, config: Configuration) -> float:
    lam = power_marginal(0.0, 1.0, p, config.domain_factor * R, config.samples)
    return lam.integrate(0.0, R) / (n * lam.integrate(0.0, R / n))


def convex_exponent(
    target: float, n: int, R: float, config: Configuration, max_steps: int = 200
) -> float:
    """
    Smallest exponent p, on a 2% ladder from log M / log N, whose sampled
    λ(r) = r^p makes the monopolistic cost at least ``target`` times the
    evenly split optimum.
    """
    p = max(1.0, math.log(target) / math.log(n))
    for _ in range(max_steps):
        if _integral_ratio(p, n, R, config) >= target * (1.0 + 1e-3):
            return p
        p *= 1.02
    raise AnalysisError(f"No exponent reaches a ratio of {target} with {n} relays")


def convex_unbounded(params: Params, config: Configuration) -> Scenario:
    """N identical relays with λ(r) = r^p, p tuned until the ratio reaches M."""
    n = _relay_count(params["N"])
    _positive(params, "M", "R")
    if params["M"] <= 1.0:
        raise AnalysisError(f"Target ratio M must exceed 1, got {params['M']}")
    p = convex_exponent(params["M"], n, params["R"], config)
    logger.info("Convex family with %s relays uses exponent %.6g", n, p)
    half = PowerCost(a=0.0, b=0.5, p=p)
    return Scenario(
        name=f"convex-unbounded-n{n}",
        source="s",
        destination="w",
        session_rate=params["R"],
        links=oligopoly_links([(half, half)] * n),
        settings=SettingsOverride(samples=config.samples),
    )


def elastic_oligopoly(params: Params, config: Configuration) -> Scenario:
    """Linear oligopoly whose source values admitted rate at u(r) = a - b·r."""
    n = _relay_count(params["N"])
    _positive(params, "c", "R")
    a, b, R = params["a"], params["b"], params["R"]
    if b < 0.0:
        raise AnalysisError(f"Utility slope b must be nonnegative, got {b}")
    if a - b * R < 0.0:
        raise AnalysisError(f"Utility a - b·R = {a - b * R:.6g} turns negative")
    half = LinearCost(a=0.0, b=params["c"] / 2.0)
    return Scenario(
        name=f"elastic-oligopoly-n{n}",
        source="s",
        destination="w",
        session_rate=R,
        links=oligopoly_links([(half, half)] * n),
        utility=LinearCost(a=a, b=-b),
    )


Builder = Callable[[Params, Configuration], Scenario]

_FAMILIES: dict[ExampleFamily, tuple[dict[str, float], Builder]] = {
    ExampleFamily.OLIGOPOLY_LINEAR: ({"N": 3, "c": 1.0, "R": 1.0}, oligopoly_linear),
    ExampleFamily.DUOPOLY_INEFFICIENT: ({"a1": 1.0, "a2": 2.0, "R": 3.0}, duopoly_inefficient),
    ExampleFamily.MYOPIC_GENERAL: (
        {"M": 100.0, "eps": 0.2, "delta": 1.0, "R": 1.0},
        myopic_general,
    ),
    ExampleFamily.CONVEX_UNBOUNDED: ({"N": 2, "M": 50.0, "R": 1.0}, convex_unbounded),
    ExampleFamily.ELASTIC_OLIGOPOLY: (
        {"N": 2, "c": 1.0, "a": 1.0, "b": 1.0, "R": 1.0},
        elastic_oligopoly,
    ),
}


def default_params(family: str) -> dict[str, float]:
    return dict(_FAMILIES[ExampleFamily.from_string(str(family))][0])


def generate_example(
    name: str,
    params: Optional[Params] = None,
    config: Configuration = DEFAULT_CONFIGURATION,
) -> Scenario:
    """
    Build a named example.

    Args:
        name: One of the ``ExampleFamily`` values.
        params: Overrides of the family's defaults.
        config: Used where the example is built by running a solver.

    Raises:
        AnalysisError: On an unknown family, unknown parameter names or
            parameters outside the family's range.
    """
    try:
        family = ExampleFamily.from_string(str(name))
    except ValueError as e:
        raise AnalysisError(str(e)) from e
    defaults, build = _FAMILIES[family]
    unknown = set(params or {}) - set(defaults)
    if unknown:
        raise AnalysisError(
            f"Unknown parameters for {family}: {sorted(unknown)}; expected {sorted(defaults)}"
        )
    merged = {**defaults, **(params or {})}
    logger.debug("Generating %s with %s", family, merged)
    return build(merged, config)

