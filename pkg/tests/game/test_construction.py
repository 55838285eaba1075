"""
Unit tests for game/construction.py

Both constructions are checked end to end: the profile they build must pass
verification and induce the routing they promise.
"""

import numpy as np
import pytest

from src.errors import ConstructionError
from src.game import (
    MARGINAL_COST,
    MONOPOLISTIC,
    build_local_info,
    construct_marginal_cost_equilibrium,
    construct_monopolistic_equilibrium,
    honest_pricing,
    honest_recursion_check,
    induced_routing,
    lower_convex_minorant,
    oligopoly_path_marginals,
    verify_equilibrium,
)

from tests.data.game_data import duopoly, layered, symmetric_linear, zero_flow_chain


class TestMarginalCostEquilibrium:
    """Test cases for pricing every market at λ_h*."""

    def test_duopoly_prices_are_least_marginal(self):
        """Test that both relays announce the constant λ_s* = 2."""
        net, costs = duopoly()
        profile, _ = construct_marginal_cost_equilibrium(net, costs, 3.0)
        assert profile.label == MARGINAL_COST
        for relay in net.relays:
            price = profile.price(relay, net.source)
            assert price.max_value() == pytest.approx(2.0, abs=1e-5)
            assert price.min_value() == pytest.approx(2.0, abs=1e-5)

    def test_duopoly_is_efficient(self):
        """Test that the profile verifies and induces the optimum."""
        net, costs = duopoly()
        profile, _ = construct_marginal_cost_equilibrium(net, costs, 3.0)
        report = verify_equilibrium(net, profile, costs, 3.0)
        assert report.verified
        assert report.efficient
        assert report.total_cost == pytest.approx(3.0, abs=1e-5)
        assert report.poa_contribution == pytest.approx(1.0, abs=1e-5)

    def test_layered_is_efficient(self):
        """Test that marginal-cost pricing verifies on a two-layer game."""
        net, costs = layered()
        profile, _ = construct_marginal_cost_equilibrium(net, costs, 1.0)
        report = verify_equilibrium(net, profile, costs, 1.0)
        assert report.verified
        assert report.efficient
        assert report.structure == "everywhere-competitive"

    def test_pins_optimal_flows(self):
        """Test that the optimum's link flows are pinned."""
        net, costs = duopoly()
        profile, routing = construct_marginal_cost_equilibrium(net, costs, 3.0)
        assert dict(profile.pinned_flows) == pytest.approx(dict(routing.flows))

    def test_honest_recursion_holds(self):
        """Test that d_i(r_i) equals λ_i at the induced routing."""
        net, costs = duopoly()
        profile, routing = construct_marginal_cost_equilibrium(net, costs, 3.0)
        deviations = honest_recursion_check(net, costs, profile, routing)
        assert max(deviations.values()) < 1e-5

    def test_zero_flow_chain_is_priced_honestly(self):
        """Test that honest prices compose link marginals through two empty relays."""
        net, costs = zero_flow_chain()
        s, b, c = net.source, net.node_id("b"), net.node_id("c")
        profile, routing = construct_marginal_cost_equilibrium(net, costs, 1.0)
        assert routing.rate_of(b) == 0.0
        assert profile.price(c, b)(0.0) == pytest.approx(1.5)
        assert profile.price(c, b)(0.5) == pytest.approx(2.5)

        deviations = honest_recursion_check(net, costs, profile, routing)
        assert deviations[b] < 1e-5
        assert deviations[c] < 1e-5

        local = build_local_info(
            net, b, profile.prices, costs, routing, include_competitors=False
        )
        through_b = honest_pricing(local, s)
        assert through_b(0.0) == pytest.approx(11.5, abs=1e-5)
        assert through_b(0.25) == pytest.approx(12.25, abs=1e-5)
        assert through_b(1.0) == pytest.approx(14.1, abs=1e-5)
        assert verify_equilibrium(net, profile, costs, 1.0).verified


class TestMonopolisticEquilibrium:
    """Test cases for handing the session to one relay."""

    def test_duopoly_ratio(self):
        """Test that (r, 2r) at R_s = 3 costs 4.5 against the optimum 3."""
        net, costs = duopoly()
        profile, routing = construct_monopolistic_equilibrium(net, costs, 3.0)
        assert profile.label == MONOPOLISTIC
        assert routing.flow(net.source, net.node_id("r1")) == 3.0
        report = verify_equilibrium(net, profile, costs, 3.0)
        assert report.verified
        assert not report.efficient
        assert report.structure == "monopolistic"
        assert report.total_cost == pytest.approx(4.5, abs=1e-5)
        assert report.poa_contribution == pytest.approx(1.5, abs=1e-5)

    def test_price_is_strictly_decreasing(self):
        """Test that the common price falls with the flow won."""
        net, costs = duopoly()
        profile, _ = construct_monopolistic_equilibrium(net, costs, 3.0)
        price = profile.price(net.node_id("r2"), net.source)
        assert price.is_strictly_decreasing()

    def test_induced_routing_matches(self):
        """Test that routing under the profile sends everything to r1."""
        net, costs = duopoly()
        profile, expected = construct_monopolistic_equilibrium(net, costs, 3.0)
        routing = induced_routing(net, profile, costs, 3.0)
        assert routing.is_close(expected, 1e-6)

    @pytest.mark.parametrize("n", [2, 3])
    def test_symmetric_ratio_equals_relay_count(self, n):
        """Test that N identical linear relays reach a ratio of N."""
        net, costs = symmetric_linear(n)
        profile, _ = construct_monopolistic_equilibrium(net, costs, 1.0)
        report = verify_equilibrium(net, profile, costs, 1.0)
        assert report.verified
        assert report.poa_contribution == pytest.approx(float(n), rel=1e-4)

    def test_rejects_non_oligopoly(self):
        """Test that a layered network cannot be monopolized this way."""
        net, costs = layered()
        with pytest.raises(ConstructionError, match="oligopoly"):
            construct_monopolistic_equilibrium(net, costs, 1.0)


class TestHelpers:
    """Test cases for the construction building blocks."""

    def test_convex_minorant_of_concave_points(self):
        """Test that concave points collapse onto their chord."""
        fn = lower_convex_minorant(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 1.5]))
        np.testing.assert_allclose(fn.x, [0.0, 2.0])
        assert fn(1.0) == pytest.approx(0.75)

    def test_convex_minorant_keeps_convex_points(self):
        """Test that convex points are kept and slopes increase."""
        fn = lower_convex_minorant(np.array([0.0, 1.0, 2.0]), np.array([0.0, 0.5, 2.0]))
        np.testing.assert_allclose(fn.y_lo, [0.5, 1.5])

    def test_oligopoly_path_marginals(self):
        """Test that λ_k adds both hops on [0, R_s]."""
        net, costs = duopoly()
        lam = oligopoly_path_marginals(net, costs, 3.0)
        assert lam[net.node_id("r2")](1.5) == pytest.approx(3.0)
        assert lam[net.node_id("r1")].domain_hi == pytest.approx(3.0)
