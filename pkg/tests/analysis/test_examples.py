"""
Unit tests for analysis/examples.py
"""

import pytest

from src.analysis import ExampleFamily, default_params, generate_example, myopic_general_costs
from src.analysis.examples import convex_exponent
from src.configuration import Configuration
from src.errors import AnalysisError
from src.game import construct_monopolistic_equilibrium, verify_equilibrium
from src.scenario import compile_scenario


class TestExampleFamily:
    """Test cases for the family enum."""

    def test_from_string(self):
        """Test case-insensitive lookup."""
        assert ExampleFamily.from_string("Myopic-General") == ExampleFamily.MYOPIC_GENERAL
        assert str(ExampleFamily.ELASTIC_OLIGOPOLY) == "elastic-oligopoly"

    def test_invalid_family(self):
        """Test that an unknown family lists the valid ones."""
        with pytest.raises(ValueError, match="oligopoly-linear"):
            ExampleFamily.from_string("triopoly")


class TestGenerateExample:
    """Test cases for building named games."""

    def test_default_params(self):
        """Test the defaults of the linear oligopoly."""
        assert default_params("oligopoly-linear") == {"N": 3, "c": 1.0, "R": 1.0}

    def test_defaults_are_copies(self):
        """Test that mutating returned defaults leaves the family alone."""
        params = default_params("oligopoly-linear")
        params["N"] = 10
        assert default_params("oligopoly-linear")["N"] == 3

    def test_oligopoly_size(self):
        """Test that N relays give 2N links and a matching name."""
        scenario = generate_example("oligopoly-linear", {"N": 4})
        assert scenario.name == "oligopoly-linear-n4"
        assert len(scenario.links) == 8
        assert scenario.links[0].cost.b == pytest.approx(0.5)

    def test_unknown_family_raises(self):
        """Test that a bad family name is an analysis error."""
        with pytest.raises(AnalysisError):
            generate_example("triopoly")

    def test_unknown_parameter_raises(self):
        """Test that parameters outside the family are rejected."""
        with pytest.raises(AnalysisError, match="Unknown parameters"):
            generate_example("oligopoly-linear", {"K": 2})

    def test_fractional_relay_count_raises(self):
        """Test that N must be a whole number of at least two."""
        with pytest.raises(AnalysisError, match="integer"):
            generate_example("oligopoly-linear", {"N": 2.5})

    def test_duopoly_ships_monopolistic_profile(self):
        """Test that the inefficient duopoly carries a price for each relay."""
        scenario = generate_example("duopoly-inefficient")
        assert scenario.profile is not None
        assert {p.relay for p in scenario.profile.prices} == {"r1", "r2"}


class TestMyopicGeneral:
    """Test cases for the six-node general game."""

    def test_closed_form_costs(self):
        """Test equilibrium and optimal cost at the default constants."""
        equilibrium, optimal = myopic_general_costs(100.0, 0.2, 1.0, 1.0)
        assert equilibrium == pytest.approx(179.39)
        assert optimal == pytest.approx(2.0)

    def test_profile_pins_the_myopic_split(self):
        """Test that the shipped profile sends ε/(2δ) through h."""
        scenario = generate_example("myopic-general")
        pins = {(p.tail, p.head): p.flow for p in scenario.profile.pinned_flows}
        assert pins[("s", "h")] == pytest.approx(0.1)
        assert pins[("s", "g")] == pytest.approx(0.9)
        assert pins[("h", "j")] == 0.0

    def test_compiles(self):
        """Test that the generated game passes network validation."""
        problem = compile_scenario(generate_example("myopic-general"))
        assert len(problem.net.relays) == 4
        assert problem.profile.label == "myopic-general"

    def test_small_M_raises(self):
        """Test that M must dominate ε·R and δ·R."""
        with pytest.raises(AnalysisError, match="dominate"):
            generate_example("myopic-general", {"M": 10.0})

    def test_wide_margin_raises(self):
        """Test that ε/(2δ) must stay below the session rate."""
        with pytest.raises(AnalysisError, match="below"):
            generate_example("myopic-general", {"M": 1000.0, "eps": 4.0, "delta": 1.0})


class TestConvexUnbounded:
    """Test cases for the convex family."""

    def test_exponent_reaches_target(self):
        """Test that the tuned exponent is just above log M / log N."""
        p = convex_exponent(4.0, 2, 1.0, Configuration())
        assert 2.0 <= p < 2.2

    def test_ratio_must_exceed_one(self):
        """Test that a target ratio of one is rejected."""
        with pytest.raises(AnalysisError, match="exceed"):
            generate_example("convex-unbounded", {"M": 1.0})

    def test_scenario_carries_samples(self):
        """Test that the sampling resolution travels with the scenario."""
        scenario = generate_example("convex-unbounded", {"M": 4.0}, Configuration(samples=32))
        assert scenario.settings.samples == 32
        assert scenario.name == "convex-unbounded-n2"

    @pytest.mark.parametrize("target", [10.0, pytest.param(50.0, marks=pytest.mark.slow)])
    def test_monopolistic_equilibrium_reaches_target(self, target):
        """Test that the verified monopolistic equilibrium costs at least M times the optimum."""
        problem = compile_scenario(generate_example("convex-unbounded", {"M": target}))
        net, costs, R = problem.net, problem.link_costs, problem.session_rate
        profile, _ = construct_monopolistic_equilibrium(net, costs, R, problem.config)
        report = verify_equilibrium(net, profile, costs, R, problem.config)
        assert report.verified
        assert report.structure == "monopolistic"
        assert report.poa_contribution >= target


class TestElasticOligopoly:
    """Test cases for the elastic family."""

    def test_utility_is_attached(self):
        """Test that u(r) = a - b·r is stored as a linear spec."""
        scenario = generate_example("elastic-oligopoly")
        assert scenario.utility.a == 1.0
        assert scenario.utility.b == -1.0

    def test_negative_slope_raises(self):
        """Test that an increasing utility is rejected."""
        with pytest.raises(AnalysisError, match="nonnegative"):
            generate_example("elastic-oligopoly", {"b": -1.0})

    def test_utility_turning_negative_raises(self):
        """Test that u must stay nonnegative up to R."""
        with pytest.raises(AnalysisError, match="negative"):
            generate_example("elastic-oligopoly", {"a": 0.5})
