"""Structural checks every network must pass before a solver runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from src.errors import NetworkError
from src.logging import get_logger
from src.network.topology import Network, NodeId

logger = get_logger(__name__)


class FailureKind(str, Enum):
    CYCLE = "cycle"
    SOURCE_HAS_PREDECESSORS = "source-has-predecessors"
    DESTINATION_HAS_OFFSPRINGS = "destination-has-offsprings"
    MISSING_PATH = "missing-path"
    STRANDED_NODE = "stranded-node"
    SINGLETON_OFFSPRING = "singleton-relay-offspring-set"
    SIBLING_PREDECESSOR_OVERLAP = "sibling-predecessor-overlap"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str) -> FailureKind:
        for kind in cls:
            if kind.value == value.lower():
                return kind
        valid_values = [k.value for k in cls]
        raise ValueError(f"Invalid failure kind: {value}. Valid values: {valid_values}")


@dataclass(frozen=True)
class ValidationFailure:
    kind: FailureKind
    message: str
    nodes: tuple[NodeId, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[ValidationFailure, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def kinds(self) -> set[FailureKind]:
        return {f.kind for f in self.failures}

    def raise_if_failed(self) -> None:
        if self.failures:
            details = "; ".join(f"{f.kind}: {f.message}" for f in self.failures)
            raise NetworkError(f"Network failed validation: {details}")


def _cycle_failures(net: Network) -> list[ValidationFailure]:
    try:
        cycle = nx.find_cycle(net.graph)
    except nx.NetworkXNoCycle:
        return []
    nodes = tuple(edge[0] for edge in cycle)
    names = " -> ".join(net.name_of(n) for n in nodes)
    return [ValidationFailure(FailureKind.CYCLE, f"cycle {names}", nodes)]


def _terminal_failures(net: Network) -> list[ValidationFailure]:
    failures = []
    if net.predecessors(net.source):
        failures.append(
            ValidationFailure(
                FailureKind.SOURCE_HAS_PREDECESSORS,
                f"source {net.name_of(net.source)} has incoming links",
                (net.source,),
            )
        )
    if net.offsprings(net.destination):
        failures.append(
            ValidationFailure(
                FailureKind.DESTINATION_HAS_OFFSPRINGS,
                f"destination {net.name_of(net.destination)} has outgoing links",
                (net.destination,),
            )
        )
    return failures


def _reachability_failures(net: Network) -> list[ValidationFailure]:
    if not nx.has_path(net.graph, net.source, net.destination):
        return [
            ValidationFailure(
                FailureKind.MISSING_PATH,
                "no path from source to destination",
                (net.source, net.destination),
            )
        ]
    reached = nx.descendants(net.graph, net.source) | {net.source}
    reaching = nx.ancestors(net.graph, net.destination) | {net.destination}
    stranded = tuple(n for n in net.nodes if n not in reached or n not in reaching)
    if not stranded:
        return []
    names = ", ".join(net.name_of(n) for n in stranded)
    return [
        ValidationFailure(
            FailureKind.STRANDED_NODE,
            f"nodes off every source-destination path: {names}",
            stranded,
        )
    ]


def _offspring_failures(net: Network) -> list[ValidationFailure]:
    failures = []
    for node in net.nodes:
        if node == net.destination:
            continue
        offsprings = net.offsprings(node)
        if not offsprings or offsprings == {net.destination}:
            continue
        relays = offsprings - {net.destination}
        if len(relays) < 2:
            failures.append(
                ValidationFailure(
                    FailureKind.SINGLETON_OFFSPRING,
                    f"{net.name_of(node)} forwards to the single relay "
                    f"{net.name_of(next(iter(relays)))}",
                    (node,),
                )
            )
    return failures


def _overlap_failures(net: Network) -> list[ValidationFailure]:
    failures = []
    for relay in net.relays:
        preds = net.predecessors(relay)
        sibling_union: set[NodeId] = set()
        for pred in preds:
            sibling_union |= net.siblings(relay, pred)
        overlap = sibling_union & preds
        if overlap:
            names = ", ".join(net.name_of(n) for n in sorted(overlap))
            failures.append(
                ValidationFailure(
                    FailureKind.SIBLING_PREDECESSOR_OVERLAP,
                    f"{names} both sibling and predecessor of {net.name_of(relay)}",
                    (relay, *sorted(overlap)),
                )
            )
    return failures


def validate(net: Network) -> ValidationReport:
    """
    Check the structural assumptions of the pricing game.

    Returns:
        A report listing every violated assumption; empty when the network
        is usable by the solvers.
    """
    failures = _cycle_failures(net)
    failures += _terminal_failures(net)
    failures += _reachability_failures(net)
    failures += _offspring_failures(net)
    failures += _overlap_failures(net)
    if failures:
        logger.info(
            "Network validation failed: %s", ", ".join(str(f.kind) for f in failures)
        )
    else:
        logger.debug("Network validation passed for %r", net)
    return ValidationReport(tuple(failures))
