"""Pricing profile files."""

from __future__ import annotations

from typing import Optional

from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import NetworkError, ScenarioError
from src.game import PricingProfile
from src.logging import get_logger
from src.network import Edge, Network
from src.scenario.costs import build_marginal, to_spec
from src.scenario.files import PathLike, read_model, write_model
from src.scenario.models import PinnedFlow, PriceSpec, ProfileFile, ProfileSpec

logger = get_logger(__name__)


def compile_pins(
    net: Network, pins: list[PinnedFlow], prefix: str, path: Optional[PathLike] = None
) -> dict[Edge, float]:
    flows = {}
    for k, pin in enumerate(pins):
        try:
            edge = (net.node_id(pin.tail), net.node_id(pin.head))
        except NetworkError as e:
            raise ScenarioError(str(e), path=path, field=f"{prefix}[{k}]") from e
        if not net.has_edge(*edge):
            raise ScenarioError(
                f"No link {pin.tail}->{pin.head} to pin",
                path=path,
                field=f"{prefix}[{k}]",
            )
        flows[edge] = pin.flow
    return flows


def compile_profile(
    spec: ProfileSpec,
    net: Network,
    session_rate: float,
    config: Configuration = DEFAULT_CONFIGURATION,
    path: Optional[PathLike] = None,
    prefix: str = "profile",
) -> PricingProfile:
    """
    Resolve names and build every price on [0, R_s].

    Raises:
        ScenarioError: On unknown nodes, prices for non-existent markets or
            ill-formed price specs.
    """
    prices = {}
    for k, entry in enumerate(spec.prices):
        field = f"{prefix}.prices[{k}]"
        try:
            relay = net.node_id(entry.relay)
            pred = net.node_id(entry.predecessor)
        except NetworkError as e:
            raise ScenarioError(str(e), path=path, field=field) from e
        if relay not in net.relays or not net.has_edge(pred, relay):
            raise ScenarioError(
                f"{entry.predecessor} is not a predecessor of relay {entry.relay}",
                path=path,
                field=field,
            )
        try:
            prices[(relay, pred)] = build_marginal(entry.price, session_rate, config)
        except ValueError as e:
            raise ScenarioError(str(e), path=path, field=f"{field}.price") from e
    pins = compile_pins(net, spec.pinned_flows, f"{prefix}.pinned_flows", path)
    logger.debug(
        "Compiled profile %r: %s prices, %s pinned flows", spec.label, len(prices), len(pins)
    )
    return PricingProfile(prices, pins, spec.label)


def profile_to_spec(profile: PricingProfile, net: Network) -> ProfileSpec:
    name = net.name_of
    return ProfileSpec(
        label=profile.label,
        prices=[
            PriceSpec(relay=name(i), predecessor=name(h), price=to_spec(fn))
            for (i, h), fn in sorted(profile.prices.items())
        ],
        pinned_flows=[
            PinnedFlow(tail=name(t), head=name(h), flow=f)
            for (t, h), f in sorted(profile.pinned_flows.items())
        ],
    )


def load_profile(path: PathLike) -> ProfileSpec:
    return read_model(path, ProfileFile).profile


def save_profile(profile: ProfileSpec, path: PathLike) -> None:
    write_model(ProfileFile(profile=profile), path)
