"""
Scenario loading, saving and compilation.

``load``/``save`` move between files and the pydantic ``Scenario`` model;
``compile_scenario`` turns a model into the objects the solvers take: a
validated ``Network``, link cost marginals, the solver ``Configuration`` and
the optional shipped pricing profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Optional

from src.configuration import Configuration
from src.errors import AnalysisError, DomainError, NetworkError, ScenarioError
from src.game import PricingProfile
from src.logging import get_logger
from src.marginals import MarginalFn
from src.network import Edge, Network, validate
from src.scenario.costs import build_marginal
from src.scenario.files import PathLike, dump_model, parse_model, read_model, write_model
from src.scenario.models import Scenario
from src.scenario.profiles import compile_pins, compile_profile

logger = get_logger(__name__)


def load(path: PathLike) -> Scenario:
    """
    Read a scenario file.

    Raises:
        ScenarioError: With the offending field and line on any schema error.
    """
    return read_model(path, Scenario)


def loads(text: str, path: PathLike = "<string>") -> Scenario:
    return parse_model(text, Scenario, path)


def save(scenario: Scenario, path: PathLike) -> None:
    """Write the canonical form; saving a loaded file reproduces it byte for byte."""
    write_model(scenario, path)


def dumps(scenario: Scenario) -> str:
    return dump_model(scenario)


@dataclass(frozen=True, eq=False)
class Problem:
    """
    A compiled scenario.

    Attributes:
        scenario: The model it came from.
        net: Validated network, including the overflow link of an elastic
            source.
        link_costs: d_ij per link on [0, domain_factor·R_s].
        session_rate: R_s.
        config: Defaults and environment overlaid with the scenario's
            settings and then the caller's overrides.
        profile: The shipped pricing profile, tie-breaks merged in.
        tie_breaks: Pinned link flows from the scenario's tie-break list.
        overflow: The overflow link, when the source is elastic.
    """

    scenario: Scenario
    net: Network
    link_costs: Mapping[Edge, MarginalFn]
    session_rate: float
    config: Configuration
    profile: Optional[PricingProfile] = None
    tie_breaks: Mapping[Edge, float] = field(default_factory=dict)
    overflow: Optional[Edge] = None

    @property
    def name(self) -> str:
        return self.scenario.name

    def with_tie_breaks(self, profile: PricingProfile) -> PricingProfile:
        """Add tie-breaks for every node the profile does not pin itself."""
        if not self.tie_breaks:
            return profile
        pinned_nodes = {tail for tail, _ in profile.pinned_flows}
        merged = dict(profile.pinned_flows)
        for (tail, head), flow in self.tie_breaks.items():
            if tail not in pinned_nodes:
                merged[(tail, head)] = flow
        return profile.with_pinned(merged)


def _link_costs(
    scenario: Scenario, net: Network, config: Configuration, path: Optional[PathLike]
) -> dict[Edge, MarginalFn]:
    upper = config.domain_factor * scenario.session_rate
    costs = {}
    for k, link in enumerate(scenario.links):
        where = f"links[{k}].cost"
        try:
            fn = build_marginal(link.cost, upper, config)
        except (ValueError, DomainError) as e:
            raise ScenarioError(str(e), path=path, field=where) from e
        if fn.min_value() < 0.0:
            raise ScenarioError(
                f"Link {link.tail}->{link.head} has a negative marginal cost "
                f"(minimum {fn.min_value():.6g})",
                path=path,
                field=where,
            )
        if not fn.is_strictly_increasing():
            raise ScenarioError(
                f"Link {link.tail}->{link.head} marginal cost is not strictly increasing",
                path=path,
                field=where,
            )
        costs[(net.node_id(link.tail), net.node_id(link.head))] = fn
    return costs


def _add_overflow(
    scenario: Scenario,
    net: Network,
    costs: dict[Edge, MarginalFn],
    config: Configuration,
    path: Optional[PathLike],
) -> tuple[Network, dict[Edge, MarginalFn]]:
    # Import here to avoid circular imports
    from src.analysis.elastic import elastic_transform

    try:
        utility = build_marginal(scenario.utility, scenario.session_rate, config)
        return elastic_transform(net, costs, utility, scenario.session_rate)
    except (ValueError, DomainError, AnalysisError) as e:
        raise ScenarioError(str(e), path=path, field="utility") from e


def _checked_network(net: Network, path: Optional[PathLike]) -> None:
    report = validate(net)
    if not report.passed:
        details = "; ".join(f"{f.kind}: {f.message}" for f in report.failures)
        raise ScenarioError(f"Network failed validation: {details}", path=path, field="links")


def compile_scenario(
    scenario: Scenario,
    base: Optional[Configuration] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    path: Optional[PathLike] = None,
) -> Problem:
    """
    Build solver inputs from a scenario.

    Args:
        scenario: A parsed scenario.
        base: Configuration before the scenario's settings; read from the
            environment when omitted.
        overrides: Applied after the scenario's settings (CLI flags).
        path: Used in error messages.

    Raises:
        ScenarioError: On networks that fail validation, negative or
            non-increasing link marginals, bad utilities and profiles naming
            unknown markets.
    """
    config = (base or Configuration.from_settings()).with_overrides(
        **scenario.settings.model_dump()
    )
    if overrides:
        config = config.with_overrides(**overrides)

    edges = [(link.tail, link.head) for link in scenario.links]
    try:
        net = Network.from_edges(edges, scenario.source, scenario.destination)
    except NetworkError as e:
        raise ScenarioError(str(e), path=path, field="links") from e
    _checked_network(net, path)
    costs = _link_costs(scenario, net, config, path)

    overflow = None
    if scenario.utility is not None:
        net, costs = _add_overflow(scenario, net, costs, config, path)
        overflow = (net.source, net.destination)
        _checked_network(net, path)

    tie_breaks = compile_pins(net, scenario.tie_breaks, "tie_breaks", path)
    problem = Problem(
        scenario=scenario,
        net=net,
        link_costs=costs,
        session_rate=scenario.session_rate,
        config=config,
        tie_breaks=tie_breaks,
        overflow=overflow,
    )
    if scenario.profile is not None:
        profile = compile_profile(
            scenario.profile, net, scenario.session_rate, config, path
        )
        if not profile.label:
            profile = PricingProfile(profile.prices, profile.pinned_flows, scenario.name)
        problem = replace(problem, profile=problem.with_tie_breaks(profile))
    logger.info(
        "Compiled scenario %r: %s nodes, %s links, R_s=%s",
        scenario.name,
        len(net.nodes),
        len(net.edges),
        scenario.session_rate,
    )
    return problem


def load_problem(
    path: PathLike,
    base: Optional[Configuration] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> Problem:
    """``load`` followed by ``compile_scenario``."""
    return compile_scenario(load(path), base, overrides, path)
