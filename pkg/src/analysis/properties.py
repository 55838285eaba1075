"""
Randomized property suites.

Each suite draws games from ``generators``, builds or attaches a pricing
profile, verifies it, and records a counterexample whenever a verified
equilibrium breaks the suite's efficiency claim. Trials get independent
child seeds of one ``numpy.random.SeedSequence``, so a run is reproducible
from its seed whatever the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from src.analysis.generators import (
    focal_oligopoly,
    perturbed_split_profile,
    random_dag,
    random_oligopoly,
)
from src.analysis.poa import poa_bound_check
from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import RelayPricingError
from src.game import (
    construct_marginal_cost_equilibrium,
    construct_monopolistic_equilibrium,
    verify_equilibrium,
)
from src.logging import get_logger, log_operation
from src.scenario import Scenario, compile_scenario, dumps, profile_to_spec
from src.schemas.reports import EquilibriumReport, SuiteReport

logger = get_logger(__name__)

BOUND_SLACK = 1e-3


class PropertySuite(str, Enum):
    COMPETITIVE = "competitive"
    FOCAL = "focal"
    EVERYWHERE_COMPETITIVE = "everywhere-competitive"
    MARGINAL_COST = "marginal-cost"
    CONCAVE_BOUND = "concave-bound"
    MONOPOLISTIC_OPTIMUM = "monopolistic-optimum"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str) -> PropertySuite:
        for suite in cls:
            if suite.value == value.lower():
                return suite
        valid_values = [s.value for s in cls]
        raise ValueError(f"Invalid property suite: {value}. Valid values: {valid_values}")


@dataclass
class TrialOutcome:
    """
    Attributes:
        checked: The suite's premise held, so the claim was tested.
        message: Why the trial is a counterexample; None when it is not.
        scenario: The game, with the offending profile attached.
    """

    checked: bool
    message: Optional[str] = None
    scenario: Optional[Scenario] = None


def _verified(scenario: Scenario, config: Configuration) -> EquilibriumReport:
    problem = compile_scenario(scenario, config)
    return verify_equilibrium(
        problem.net, problem.profile, problem.link_costs, problem.session_rate, problem.config
    )


def _with_constructed(scenario: Scenario, config: Configuration, construct) -> Scenario:
    problem = compile_scenario(scenario, config)
    profile, _ = construct(problem.net, problem.link_costs, problem.session_rate, problem.config)
    return scenario.model_copy(update={"profile": profile_to_spec(profile, problem.net)})


def _claim_efficient(
    scenario: Scenario, report: EquilibriumReport, premise: bool, what: str
) -> TrialOutcome:
    if not premise:
        return TrialOutcome(checked=False)
    if report.efficient:
        return TrialOutcome(checked=True)
    return TrialOutcome(
        checked=True,
        message=f"verified {what} equilibrium costs {report.total_cost:.9g} "
        f"against an optimum of {report.optimal_cost:.9g}",
        scenario=scenario,
    )


def competitive_trial(rng: np.random.Generator, config: Configuration) -> TrialOutcome:
    """Verified oligopoly equilibria that split the session must be efficient."""
    variant = int(rng.integers(3))
    if variant == 0:
        scenario = focal_oligopoly(rng, config).scenario
    else:
        shape = "linear" if rng.random() < 0.5 else "concave"
        base = random_oligopoly(rng, shape, max_relays=4)
        problem = compile_scenario(base, config)
        net = problem.net
        profile, _ = construct_marginal_cost_equilibrium(
            net, problem.link_costs, problem.session_rate, problem.config
        )
        if variant == 1:
            scenario = base.model_copy(update={"profile": profile_to_spec(profile, net)})
        else:
            level = float(profile.price(net.relays[0], net.source)(0.0))
            scenario = perturbed_split_profile(rng, base, level)
    report = _verified(scenario, config)
    premise = report.verified and report.structure_flags.get("competitive", False)
    return _claim_efficient(scenario, report, premise, "competitive")


def focal_trial(rng: np.random.Generator, config: Configuration) -> TrialOutcome:
    """Verified equilibria where relay r1 replicates its rivals must be efficient."""
    scenario = focal_oligopoly(rng, config).scenario
    report = _verified(scenario, config)
    return _claim_efficient(scenario, report, report.verified, "focal")


def everywhere_competitive_trial(
    rng: np.random.Generator, config: Configuration
) -> TrialOutcome:
    """
    Verified equilibria of general games where every loaded node splits its
    traffic must be efficient. Half the profiles lose their pinned flows and
    fall back on the lexicographic tie rule.
    """
    scenario = _with_constructed(
        random_dag(rng, config=config), config, construct_marginal_cost_equilibrium
    )
    if rng.random() < 0.5:
        profile = scenario.profile.model_copy(update={"pinned_flows": [], "label": "unpinned"})
        scenario = scenario.model_copy(update={"profile": profile})
    report = _verified(scenario, config)
    premise = report.verified and report.structure_flags.get("everywhere_competitive", False)
    return _claim_efficient(scenario, report, premise, "everywhere-competitive")


def marginal_cost_trial(rng: np.random.Generator, config: Configuration) -> TrialOutcome:
    """Marginal-cost pricing must verify and induce the optimum on any valid game."""
    scenario = _with_constructed(
        random_dag(rng, config=config), config, construct_marginal_cost_equilibrium
    )
    report = _verified(scenario, config)
    if not report.verified:
        return TrialOutcome(
            checked=True,
            message=f"marginal-cost profile rejected at relay {report.worst_relay} "
            f"(violation {report.worst_violation:.3g})",
            scenario=scenario,
        )
    return _claim_efficient(scenario, report, True, "marginal-cost")


def concave_bound_trial(rng: np.random.Generator, config: Configuration) -> TrialOutcome:
    """The monopolistic equilibrium of a concave oligopoly costs at most N times the optimum."""
    scenario = random_oligopoly(rng, "concave", max_relays=5)
    problem = compile_scenario(scenario, config)
    check = poa_bound_check(problem.net, problem.link_costs, problem.session_rate, problem.config)
    if check.verified and check.ratio <= check.n_relays + BOUND_SLACK:
        return TrialOutcome(checked=True)
    scenario = _with_constructed(scenario, config, construct_monopolistic_equilibrium)
    reason = "not verified" if not check.verified else f"ratio {check.ratio:.9g}"
    return TrialOutcome(
        checked=True,
        message=f"{check.shape} oligopoly of {check.n_relays} relays: {reason}",
        scenario=scenario,
    )


def monopolistic_optimum_trial(
    rng: np.random.Generator, config: Configuration
) -> TrialOutcome:
    """When the optimum is monopolistic, so is a verified efficient equilibrium."""
    shape = ("linear", "concave", "convex")[int(rng.integers(3))]
    base = random_oligopoly(rng, shape, max_relays=4, monopolistic_optimum=True)
    scenario = _with_constructed(base, config, construct_monopolistic_equilibrium)
    report = _verified(scenario, config)
    if not report.verified:
        return TrialOutcome(
            checked=True,
            message=f"monopolistic profile rejected at relay {report.worst_relay}",
            scenario=scenario,
        )
    return _claim_efficient(scenario, report, True, "monopolistic")


_TRIALS: dict[PropertySuite, Callable[[np.random.Generator, Configuration], TrialOutcome]] = {
    PropertySuite.COMPETITIVE: competitive_trial,
    PropertySuite.FOCAL: focal_trial,
    PropertySuite.EVERYWHERE_COMPETITIVE: everywhere_competitive_trial,
    PropertySuite.MARGINAL_COST: marginal_cost_trial,
    PropertySuite.CONCAVE_BOUND: concave_bound_trial,
    PropertySuite.MONOPOLISTIC_OPTIMUM: monopolistic_optimum_trial,
}


def run_trial(
    suite: PropertySuite, seed: np.random.SeedSequence, config: Configuration
) -> TrialOutcome:
    """One trial; solver errors become counterexamples."""
    rng = np.random.default_rng(seed)
    try:
        return _TRIALS[suite](rng, config)
    except RelayPricingError as e:
        logger.warning("Trial of %s raised %s: %s", suite, type(e).__name__, e)
        return TrialOutcome(checked=True, message=f"{type(e).__name__}: {e}")


def _run_indexed(args: tuple[PropertySuite, np.random.SeedSequence, Configuration]) -> TrialOutcome:
    return run_trial(*args)


@log_operation(
    "run_trials",
    summarize=lambda r: {"checked": r.checked, "counterexamples": len(r.counterexamples)},
)
def run_trials(
    suite: str,
    trials: int,
    seed: int = 0,
    config: Configuration = DEFAULT_CONFIGURATION,
    workers: Optional[int] = None,
) -> SuiteReport:
    """
    Run ``trials`` independent trials of a property suite.

    Args:
        suite: A ``PropertySuite`` value.
        trials: Number of games drawn.
        seed: Root of the per-trial seed tree.
        config: Solver configuration for every trial.
        workers: Processes to use; config.workers when omitted.

    Returns:
        Counts of trials whose premise held and every counterexample, each
        with its trial index, reason and the scenario that reproduces it.
    """
    kind = PropertySuite.from_string(str(suite))
    children = np.random.SeedSequence(seed).spawn(trials)
    jobs = [(kind, child, config) for child in children]
    workers = workers or config.workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_indexed, jobs))
    else:
        outcomes = [_run_indexed(job) for job in jobs]

    report = SuiteReport(suite=str(kind), trials=trials, seed=seed)
    for index, outcome in enumerate(outcomes):
        report.checked += int(outcome.checked)
        if outcome.message is None:
            continue
        entry = {"trial": index, "message": outcome.message}
        if outcome.scenario is not None:
            entry["scenario"] = json.loads(dumps(outcome.scenario))
        report.counterexamples.append(entry)
        logger.error("Counterexample in %s trial %s: %s", kind, index, outcome.message)
    return report
