"""
Relay network topology: a loop-free directed graph with one source and one
destination.

Node ids are dense integers assigned in order of first appearance, with
names kept in a symbol table for reports and scenario files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx

from src.errors import NetworkError
from src.logging import get_logger

logger = get_logger(__name__)

NodeId = int
Edge = tuple[NodeId, NodeId]


@dataclass(frozen=True, eq=False)
class Network:
    """Immutable DAG view used by every solver."""

    graph: nx.DiGraph
    source: NodeId
    destination: NodeId
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        graph = self.graph if nx.is_frozen(self.graph) else nx.freeze(self.graph.copy())
        object.__setattr__(self, "graph", graph)
        if not self.names:
            object.__setattr__(self, "names", tuple(str(n) for n in sorted(graph.nodes)))
        for node in (self.source, self.destination):
            if node not in graph:
                raise NetworkError(f"Terminal node {node} is not in the graph")
        if self.source == self.destination:
            raise NetworkError("Source and destination must differ")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        source: str,
        destination: str,
    ) -> Network:
        """
        Build a network from named edges.

        Ids follow first appearance with the source first, so a scenario's
        relay order is preserved in every report.
        """
        ids: dict[str, NodeId] = {source: 0}
        graph = nx.DiGraph()
        graph.add_node(0)
        for tail, head in edges:
            for name in (tail, head):
                if name not in ids:
                    ids[name] = len(ids)
                    graph.add_node(ids[name])
            if ids[tail] == ids[head]:
                raise NetworkError(f"Self loop on node {tail!r}")
            graph.add_edge(ids[tail], ids[head])
        if destination not in ids:
            raise NetworkError(f"Destination {destination!r} has no links")
        names = tuple(sorted(ids, key=ids.get))
        logger.debug(
            "Built network with %s nodes and %s links", len(names), graph.number_of_edges()
        )
        return cls(graph, ids[source], ids[destination], names)

    # ------------------------------------------------------------------
    # symbol table

    @cached_property
    def _ids(self) -> dict[str, NodeId]:
        return {name: i for i, name in enumerate(self.names)}

    def node_id(self, name: str) -> NodeId:
        try:
            return self._ids[name]
        except KeyError:
            raise NetworkError(f"Unknown node name {name!r}") from None

    def name_of(self, node: NodeId) -> str:
        self._require(node)
        return self.names[node]

    def edge_name(self, edge: Edge) -> str:
        return f"{self.name_of(edge[0])}->{self.name_of(edge[1])}"

    # ------------------------------------------------------------------
    # structure

    def _require(self, node: NodeId) -> None:
        if node not in self.graph:
            raise NetworkError(f"Unknown node id {node}")

    def __contains__(self, node: object) -> bool:
        return node in self.graph

    @property
    def nodes(self) -> list[NodeId]:
        return sorted(self.graph.nodes)

    @property
    def edges(self) -> list[Edge]:
        return sorted(self.graph.edges)

    @property
    def relays(self) -> list[NodeId]:
        return [n for n in self.nodes if n not in (self.source, self.destination)]

    def has_edge(self, tail: NodeId, head: NodeId) -> bool:
        return self.graph.has_edge(tail, head)

    def predecessors(self, node: NodeId) -> set[NodeId]:
        self._require(node)
        return set(self.graph.predecessors(node))

    def offsprings(self, node: NodeId) -> set[NodeId]:
        self._require(node)
        return set(self.graph.successors(node))

    def siblings(self, node: NodeId, predecessor: NodeId) -> set[NodeId]:
        """Nodes other than ``node`` that ``predecessor`` also forwards to."""
        self._require(node)
        if not self.graph.has_edge(predecessor, node):
            raise NetworkError(
                f"{self.name_of(predecessor)} is not a predecessor of "
                f"{self.name_of(node)}"
            )
        return self.offsprings(predecessor) - {node}

    def topological_order(self) -> list[NodeId]:
        """Source first; ties resolved by ascending id."""
        try:
            return list(nx.lexicographical_topological_sort(self.graph))
        except nx.NetworkXUnfeasible:
            raise NetworkError("Network contains a cycle") from None

    def reverse_topological_order(self) -> list[NodeId]:
        """Destination first; every node appears after all of its offsprings."""
        try:
            return list(nx.lexicographical_topological_sort(self.graph.reverse(copy=False)))
        except nx.NetworkXUnfeasible:
            raise NetworkError("Network contains a cycle") from None

    def paths(self) -> Iterator[tuple[NodeId, ...]]:
        """Every source to destination path, in lexicographic order."""
        return iter(
            sorted(
                tuple(p)
                for p in nx.all_simple_paths(self.graph, self.source, self.destination)
            )
        )

    def is_oligopoly(self) -> bool:
        """Source feeds only relays and every relay forwards only to the destination."""
        relays = self.relays
        return (
            len(relays) >= 2
            and self.offsprings(self.source) == set(relays)
            and all(self.offsprings(r) == {self.destination} for r in relays)
        )

    def with_edges(self, extra: Sequence[Edge]) -> Network:
        graph = nx.DiGraph(self.graph)
        graph.add_edges_from(extra)
        return Network(graph, self.source, self.destination, self.names)

    def describe(self, edge: Optional[Edge] = None) -> str:
        if edge is not None:
            return self.edge_name(edge)
        return ", ".join(self.edge_name(e) for e in self.edges)

    def __repr__(self) -> str:
        return (
            f"Network(nodes={len(self.names)}, links={self.graph.number_of_edges()}, "
            f"source={self.names[self.source]!r}, "
            f"destination={self.names[self.destination]!r})"
        )


def predecessors(net: Network, node: NodeId) -> set[NodeId]:
    return net.predecessors(node)


def offsprings(net: Network, node: NodeId) -> set[NodeId]:
    return net.offsprings(node)


def siblings(net: Network, node: NodeId, predecessor: NodeId) -> set[NodeId]:
    return net.siblings(node, predecessor)


def reverse_topological_order(net: Network) -> list[NodeId]:
    return net.reverse_topological_order()
