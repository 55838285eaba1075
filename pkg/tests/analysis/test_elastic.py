"""
Unit tests for analysis/elastic.py
"""

import pytest

from src.analysis import admitted_rate, elastic_transform, generate_example, overflow_marginal
from src.errors import AnalysisError
from src.flow import solve_social_optimum
from src.marginals import MarginalFn
from src.network import Network
from src.scenario import compile_scenario

from tests.data.game_data import duopoly, oligopoly


class TestOverflowMarginal:
    """Test cases for the utility forgone on the overflow link."""

    def test_reflects_the_utility(self):
        """Test that u(r) = 1 - r gives an overflow marginal of f."""
        overflow = overflow_marginal(MarginalFn.linear(1.0, -1.0, 1.0), 1.0)
        assert overflow(0.0) == pytest.approx(0.0)
        assert overflow(0.25) == pytest.approx(0.25)
        assert overflow(1.0) == pytest.approx(1.0)

    def test_short_domain_raises(self):
        """Test that the utility must cover the whole session rate."""
        with pytest.raises(AnalysisError, match="short"):
            overflow_marginal(MarginalFn.linear(1.0, -1.0, 0.5), 1.0)

    def test_negative_utility_raises(self):
        """Test that a utility dipping below zero is rejected."""
        with pytest.raises(AnalysisError, match="nonnegative"):
            overflow_marginal(MarginalFn.linear(0.5, -1.0, 1.0), 1.0)

    def test_increasing_utility_raises(self):
        """Test that a utility rising with the rate is rejected."""
        with pytest.raises(AnalysisError, match="nonincreasing"):
            overflow_marginal(MarginalFn.linear(0.0, 1.0, 1.0), 1.0)


class TestElasticTransform:
    """Test cases for adding the overflow link."""

    def test_adds_source_to_destination_link(self):
        """Test that s→w appears with the overflow marginal."""
        net, costs = duopoly()
        utility = MarginalFn.constant(5.0, 3.0)
        bigger, new_costs = elastic_transform(net, costs, utility, 3.0)
        edge = (bigger.source, bigger.destination)
        assert bigger.has_edge(*edge)
        assert not net.has_edge(*edge)
        assert new_costs[edge](1.0) == pytest.approx(5.0)
        assert len(new_costs) == len(costs) + 1

    def test_existing_direct_link_raises(self):
        """Test that a network already linking s to w cannot be extended."""
        net = Network.from_edges([("s", "a"), ("a", "w"), ("s", "w")], "s", "w")
        costs = {e: MarginalFn.linear(0.0, 1.0, 2.0) for e in net.edges}
        with pytest.raises(AnalysisError, match="already"):
            elastic_transform(net, costs, MarginalFn.constant(1.0, 1.0), 1.0)


class TestAdmittedRate:
    """Test cases for the rate carried by the relays."""

    def test_elastic_duopoly_admits_two_thirds(self):
        """Test that two relays with λ(r) = r against u(r) = 1 - r admit 2/3."""
        problem = compile_scenario(generate_example("elastic-oligopoly"))
        assert problem.overflow == (problem.net.source, problem.net.destination)
        optimum = solve_social_optimum(
            problem.net, problem.link_costs, problem.session_rate, problem.config
        )
        assert admitted_rate(problem.net, optimum.routing) == pytest.approx(2.0 / 3.0, abs=1e-5)

    def test_worthless_demand_is_not_admitted(self):
        """Test that a zero utility sends the whole session over the overflow link."""
        net, costs = oligopoly([1.0, 1.0], 1.0, intercepts=[0.5, 0.5])
        bigger, new_costs = elastic_transform(net, costs, MarginalFn.constant(0.0, 1.0), 1.0)
        optimum = solve_social_optimum(bigger, new_costs, 1.0)
        assert admitted_rate(bigger, optimum.routing) == pytest.approx(0.0, abs=1e-4)

    def test_overwhelming_utility_admits_everything(self):
        """Test that a utility far above every path cost admits the full rate."""
        net, costs = oligopoly([1.0, 1.0], 1.0, intercepts=[0.5, 0.5])
        bigger, new_costs = elastic_transform(net, costs, MarginalFn.constant(1000.0, 1.0), 1.0)
        optimum = solve_social_optimum(bigger, new_costs, 1.0)
        assert admitted_rate(bigger, optimum.routing) == pytest.approx(1.0, abs=1e-6)
