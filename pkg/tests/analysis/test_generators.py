"""
Unit tests for analysis/generators.py
"""

import numpy as np
import pytest

from src.analysis.generators import (
    focal_oligopoly,
    perturbed_split_profile,
    random_dag,
    random_oligopoly,
)
from src.errors import AnalysisError
from src.network import Network, validate
from src.scenario import PowerCost, compile_scenario, dumps


def network_of(scenario):
    edges = [(link.tail, link.head) for link in scenario.links]
    return Network.from_edges(edges, scenario.source, scenario.destination)


class TestRandomDag:
    """Test cases for random layered networks."""

    @pytest.mark.parametrize("seed", range(5))
    def test_networks_are_valid(self, seed):
        """Test that every draw passes validation and the predecessor cap."""
        scenario = random_dag(np.random.default_rng(seed))
        net = network_of(scenario)
        assert validate(net).passed
        assert all(len(net.predecessors(i)) <= 3 for i in net.relays)
        assert 0.5 <= scenario.session_rate <= 2.0

    def test_same_seed_same_game(self):
        """Test that a seed reproduces the scenario exactly."""
        first = random_dag(np.random.default_rng(11))
        second = random_dag(np.random.default_rng(11))
        assert dumps(first) == dumps(second)

    def test_too_few_nodes_raises(self):
        """Test that fewer than four nodes cannot hold a relay network."""
        with pytest.raises(AnalysisError):
            random_dag(np.random.default_rng(0), max_nodes=3)


class TestRandomOligopoly:
    """Test cases for random oligopolies."""

    @pytest.mark.parametrize("shape", ["linear", "concave", "convex"])
    def test_shape_is_respected(self, shape):
        """Test that power exponents match the requested shape."""
        scenario = random_oligopoly(np.random.default_rng(3), shape)
        assert scenario.name == f"random-{shape}-oligopoly"
        for link in scenario.links:
            if shape == "concave":
                assert isinstance(link.cost, PowerCost) and link.cost.p < 1.0
            elif shape == "convex":
                assert isinstance(link.cost, PowerCost) and link.cost.p > 1.0
            else:
                assert link.cost.kind == "linear"

    def test_unknown_shape_raises(self):
        """Test that only the three shapes are drawn."""
        with pytest.raises(AnalysisError, match="shape"):
            random_oligopoly(np.random.default_rng(0), "wiggly")

    def test_monopolistic_optimum_prices_out_the_rest(self):
        """Test that every other relay starts above relay r1's full-rate marginal."""
        scenario = random_oligopoly(np.random.default_rng(5), "linear", monopolistic_optimum=True)
        inbound = {link.head: link.cost for link in scenario.links if link.tail == "s"}
        outbound = {link.tail: link.cost for link in scenario.links if link.head == "w"}
        R = scenario.session_rate
        top = inbound["r1"].a + inbound["r1"].b * R + outbound["r1"].a + outbound["r1"].b * R
        for relay, cost in inbound.items():
            if relay != "r1":
                assert cost.a > top


class TestFocalOligopoly:
    """Test cases for profiles where relay r1 replicates its competitors."""

    @pytest.mark.parametrize("seed", range(4))
    def test_profile_pins_interior_split(self, seed):
        """Test that the pinned split is interior and covers the session."""
        focal = focal_oligopoly(np.random.default_rng(seed))
        R = focal.scenario.session_rate
        assert 2 <= len(focal.optimal_flows) <= 4
        assert all(0.0 < f < R for f in focal.optimal_flows)
        pins = [p.flow for p in focal.scenario.profile.pinned_flows]
        assert sum(pins) == pytest.approx(R)
        assert focal.scenario.profile.label == ("focal-shifted" if focal.shifted else "focal")

    def test_duopoly_prices_are_reflections(self):
        """Test that relay r1's price is relay r2's read from the far end."""
        focal = focal_oligopoly(np.random.default_rng(7), n_relays=2)
        problem = compile_scenario(focal.scenario)
        s = problem.net.source
        first = problem.profile.price(problem.net.node_id("r1"), s)
        second = problem.profile.price(problem.net.node_id("r2"), s)
        R = problem.session_rate
        for t in np.linspace(0.0, R, 7):
            assert first(t) == pytest.approx(second(R - t), abs=1e-9)

    @pytest.mark.parametrize("seed", range(3))
    def test_prices_agree_at_the_pinned_split(self, seed):
        """Test that every relay asks the same price at its pinned flow."""
        focal = focal_oligopoly(np.random.default_rng(seed), n_relays=3)
        problem = compile_scenario(focal.scenario)
        s = problem.net.source
        asked = [
            problem.profile.price(problem.net.node_id(name), s)(f)
            for name, f in zip(["r1", "r2", "r3"], focal.optimal_flows)
        ]
        assert asked[0] == pytest.approx(asked[1], abs=1e-4)
        assert asked[2] == pytest.approx(asked[1], abs=1e-4)

    def test_single_relay_raises(self):
        """Test that a lone relay has nobody to replicate."""
        with pytest.raises(AnalysisError, match="two relays"):
            focal_oligopoly(np.random.default_rng(0), n_relays=1)


class TestPerturbedSplit:
    """Test cases for constant prices with a random split."""

    def test_pins_cover_the_session(self):
        """Test that the drawn shares add up to the session rate."""
        rng = np.random.default_rng(2)
        base = random_oligopoly(rng, "linear", max_relays=4)
        scenario = perturbed_split_profile(rng, base, 1.5)
        shares = [p.flow for p in scenario.profile.pinned_flows]
        assert sum(shares) == pytest.approx(base.session_rate, abs=1e-5)
        assert all(p.price.value == 1.5 for p in scenario.profile.prices)
        assert len(scenario.profile.prices) == len(base.links) // 2
