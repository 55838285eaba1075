"""
Unit tests for scenario/loader.py
"""

import pytest

from src.configuration import Configuration
from src.errors import ScenarioError
from src.scenario import Scenario, compile_scenario

from tests.data.scenario_data import oligopoly_document

BASE = Configuration(grid_steps=100, tol=1e-4)


def scenario(**extra):
    return Scenario.model_validate(oligopoly_document(**extra))


class TestConfigurationPrecedence:
    """Test cases for layering the solver configuration."""

    def test_scenario_settings_override_base(self):
        """Test that scenario settings sit above the base configuration."""
        problem = compile_scenario(scenario(settings={"grid_steps": 300}), BASE)
        assert problem.config.grid_steps == 300
        assert problem.config.tol == 1e-4

    def test_overrides_win(self):
        """Test that caller overrides beat scenario settings."""
        problem = compile_scenario(
            scenario(settings={"grid_steps": 300}), BASE, {"grid_steps": 500}
        )
        assert problem.config.grid_steps == 500

    def test_none_overrides_are_ignored(self):
        """Test that unset flags keep the scenario's value."""
        problem = compile_scenario(
            scenario(settings={"grid_steps": 300}), BASE, {"grid_steps": None}
        )
        assert problem.config.grid_steps == 300


class TestCompileScenario:
    """Test cases for turning a model into solver inputs."""

    def test_costs_span_twice_the_rate(self):
        """Test that link marginals live on [0, 2·R_s]."""
        problem = compile_scenario(scenario(), BASE)
        net = problem.net
        fn = problem.link_costs[(net.source, net.node_id("r2"))]
        assert fn.domain_hi == pytest.approx(2.0)
        assert fn(1.0) == pytest.approx(1.0)
        assert problem.overflow is None
        assert problem.profile is None
        assert problem.name == "two-relays"

    def test_invalid_network(self):
        """Test that a relay with no way to w fails validation."""
        document = oligopoly_document()
        document["links"].append(
            {"tail": "s", "head": "dead", "cost": {"kind": "linear", "a": 0.0, "b": 1.0}}
        )
        with pytest.raises(ScenarioError, match="validation") as info:
            compile_scenario(Scenario.model_validate(document), BASE)
        assert info.value.field == "links"

    def test_negative_marginal(self):
        """Test that a link cost below zero is rejected at its field."""
        document = oligopoly_document()
        document["links"][0]["cost"] = {"kind": "linear", "a": -5.0, "b": 1.0}
        with pytest.raises(ScenarioError, match="negative") as info:
            compile_scenario(Scenario.model_validate(document), BASE)
        assert info.value.field == "links[0].cost"

    def test_flat_marginal(self):
        """Test that a constant link marginal is not strictly increasing."""
        document = oligopoly_document()
        document["links"][3]["cost"] = {"kind": "constant", "value": 1.0}
        with pytest.raises(ScenarioError, match="strictly increasing") as info:
            compile_scenario(Scenario.model_validate(document), BASE)
        assert info.value.field == "links[3].cost"

    def test_elastic_source_gets_overflow_link(self):
        """Test that a utility adds s→w."""
        problem = compile_scenario(scenario(utility={"kind": "linear", "a": 1.0, "b": -1.0}), BASE)
        assert problem.overflow == (problem.net.source, problem.net.destination)
        assert problem.link_costs[problem.overflow](0.5) == pytest.approx(0.5)

    def test_increasing_utility_is_a_scenario_error(self):
        """Test that utility problems point at the utility field."""
        with pytest.raises(ScenarioError) as info:
            compile_scenario(scenario(utility={"kind": "linear", "a": 0.0, "b": 1.0}), BASE)
        assert info.value.field == "utility"


class TestProfilesAndTieBreaks:
    """Test cases for shipped profiles and pinned flows."""

    def test_profile_takes_scenario_name(self):
        """Test that an unlabeled profile is labeled after the scenario."""
        profile = {
            "prices": [
                {"relay": "r1", "predecessor": "s", "price": {"kind": "constant", "value": 2.0}},
                {"relay": "r2", "predecessor": "s", "price": {"kind": "constant", "value": 2.0}},
            ]
        }
        problem = compile_scenario(scenario(profile=profile), BASE)
        assert problem.profile.label == "two-relays"
        assert problem.profile.price(problem.net.node_id("r1"), problem.net.source)(0.5) == 2.0

    def test_price_for_missing_market(self):
        """Test that pricing a non-existent market is a field error."""
        profile = {
            "prices": [
                {"relay": "r1", "predecessor": "r2", "price": {"kind": "constant", "value": 2.0}}
            ]
        }
        with pytest.raises(ScenarioError, match="not a predecessor") as info:
            compile_scenario(scenario(profile=profile), BASE)
        assert info.value.field == "profile.prices[0]"

    def test_unknown_node_in_profile(self):
        """Test that an unknown relay name is a field error."""
        profile = {
            "prices": [
                {"relay": "r9", "predecessor": "s", "price": {"kind": "constant", "value": 2.0}}
            ]
        }
        with pytest.raises(ScenarioError) as info:
            compile_scenario(scenario(profile=profile), BASE)
        assert info.value.field == "profile.prices[0]"

    def test_tie_break_on_missing_link(self):
        """Test that a pin must name an existing link."""
        with pytest.raises(ScenarioError, match="No link r1->r2"):
            compile_scenario(scenario(tie_breaks=[{"tail": "r1", "head": "r2", "flow": 1.0}]), BASE)

    def test_tie_breaks_fill_unpinned_nodes(self):
        """Test that tie-breaks pin nodes the profile leaves open."""
        profile = {
            "prices": [
                {"relay": "r1", "predecessor": "s", "price": {"kind": "constant", "value": 2.0}},
                {"relay": "r2", "predecessor": "s", "price": {"kind": "constant", "value": 2.0}},
            ],
            "pinned_flows": [{"tail": "r1", "head": "w", "flow": 0.6}],
        }
        ties = [
            {"tail": "s", "head": "r1", "flow": 0.6},
            {"tail": "s", "head": "r2", "flow": 0.4},
            {"tail": "r1", "head": "w", "flow": 0.1},
        ]
        problem = compile_scenario(scenario(profile=profile, tie_breaks=ties), BASE)
        net = problem.net
        s, r1, r2 = net.source, net.node_id("r1"), net.node_id("r2")
        assert problem.profile.pinned_for(s) == {r1: 0.6, r2: 0.4}
        assert problem.profile.pinned_for(r1) == {net.destination: 0.6}
        assert len(problem.tie_breaks) == 3
