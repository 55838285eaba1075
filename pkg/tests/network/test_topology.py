"""
Unit tests for network/topology.py and network/validation.py
"""

import pytest

from src.errors import NetworkError
from src.network import FailureKind, Network, validate

from tests.data.network_data import (
    CYCLE_EDGES,
    LAYERED_EDGES,
    OLIGOPOLY_3_EDGES,
    OVERLAP_EDGES,
    SINGLETON_OFFSPRING_EDGES,
    STRANDED_EDGES,
)


@pytest.fixture
def oligopoly_net():
    return Network.from_edges(OLIGOPOLY_3_EDGES, "s", "w")


@pytest.fixture
def layered_net():
    return Network.from_edges(LAYERED_EDGES, "s", "w")


class TestFromEdges:
    """Test cases for building networks from named edges."""

    def test_ids_follow_first_appearance(self, oligopoly_net):
        """Test that the source is 0 and relays keep their file order."""
        assert oligopoly_net.source == 0
        assert [oligopoly_net.name_of(r) for r in oligopoly_net.relays] == ["r1", "r2", "r3"]
        assert oligopoly_net.destination == 4

    def test_node_id_round_trip(self, oligopoly_net):
        """Test that names and ids map onto each other."""
        assert oligopoly_net.name_of(oligopoly_net.node_id("r2")) == "r2"

    def test_unknown_name_raises(self, oligopoly_net):
        """Test that looking up a missing name raises NetworkError."""
        with pytest.raises(NetworkError, match="Unknown node name"):
            oligopoly_net.node_id("x")

    def test_self_loop_raises(self):
        """Test that a link from a node to itself is rejected."""
        with pytest.raises(NetworkError, match="Self loop"):
            Network.from_edges([("s", "a"), ("a", "a"), ("a", "w")], "s", "w")

    def test_destination_without_links_raises(self):
        """Test that the destination must appear in some link."""
        with pytest.raises(NetworkError, match="has no links"):
            Network.from_edges([("s", "a")], "s", "w")

    def test_edge_name(self, oligopoly_net):
        """Test the tail->head naming used in reports."""
        edge = (oligopoly_net.node_id("r1"), oligopoly_net.node_id("w"))
        assert oligopoly_net.edge_name(edge) == "r1->w"


class TestStructure:
    """Test cases for neighborhoods, orders and paths."""

    def test_siblings(self, layered_net):
        """Test that siblings of c at a are a's other offsprings."""
        ids = layered_net.node_id
        assert layered_net.siblings(ids("c"), ids("a")) == {ids("d")}

    def test_siblings_need_a_link(self, layered_net):
        """Test that a non-predecessor has no sibling set."""
        ids = layered_net.node_id
        with pytest.raises(NetworkError, match="not a predecessor"):
            layered_net.siblings(ids("a"), ids("c"))

    def test_topological_orders(self, layered_net):
        """Test that the source leads and the destination trails."""
        order = layered_net.topological_order()
        assert order[0] == layered_net.source
        assert order[-1] == layered_net.destination
        reverse = layered_net.reverse_topological_order()
        assert reverse[0] == layered_net.destination
        assert reverse[-1] == layered_net.source

    def test_paths_are_lexicographic(self, layered_net):
        """Test that all four paths come out sorted."""
        paths = list(layered_net.paths())
        assert len(paths) == 4
        assert paths == sorted(paths)

    def test_is_oligopoly(self, oligopoly_net, layered_net):
        """Test the one-hop relay shape."""
        assert oligopoly_net.is_oligopoly()
        assert not layered_net.is_oligopoly()

    def test_with_edges_keeps_names(self, oligopoly_net):
        """Test that adding the overflow link keeps the symbol table."""
        extended = oligopoly_net.with_edges([(oligopoly_net.source, oligopoly_net.destination)])
        assert extended.has_edge(extended.source, extended.destination)
        assert extended.names == oligopoly_net.names
        assert not oligopoly_net.has_edge(oligopoly_net.source, oligopoly_net.destination)


class TestValidate:
    """Test cases for the structural checks."""

    @pytest.mark.parametrize("edges", [OLIGOPOLY_3_EDGES, LAYERED_EDGES])
    def test_valid_networks_pass(self, edges):
        """Test that well formed games pass every check."""
        report = validate(Network.from_edges(edges, "s", "w"))
        assert report.passed
        report.raise_if_failed()

    @pytest.mark.parametrize(
        "edges,kind",
        [
            (SINGLETON_OFFSPRING_EDGES, FailureKind.SINGLETON_OFFSPRING),
            (CYCLE_EDGES, FailureKind.CYCLE),
            (STRANDED_EDGES, FailureKind.STRANDED_NODE),
            (OVERLAP_EDGES, FailureKind.SIBLING_PREDECESSOR_OVERLAP),
        ],
    )
    def test_failures_are_reported(self, edges, kind):
        """Test that each broken assumption shows up in the report."""
        report = validate(Network.from_edges(edges, "s", "w"))
        assert not report.passed
        assert kind in report.kinds()

    def test_raise_if_failed(self):
        """Test that a failing report raises NetworkError with the kind."""
        report = validate(Network.from_edges(CYCLE_EDGES, "s", "w"))
        with pytest.raises(NetworkError, match="cycle"):
            report.raise_if_failed()

    def test_destination_with_offsprings(self):
        """Test that links leaving the destination are flagged."""
        edges = OLIGOPOLY_3_EDGES + [("w", "x")]
        report = validate(Network.from_edges(edges, "s", "w"))
        assert FailureKind.DESTINATION_HAS_OFFSPRINGS in report.kinds()

    def test_failure_kind_from_string(self):
        """Test parsing failure kinds, case-insensitively."""
        assert FailureKind.from_string("CYCLE") is FailureKind.CYCLE
        with pytest.raises(ValueError, match="Invalid failure kind"):
            FailureKind.from_string("loop")
