"""Parameter sweeps over the example families."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Mapping, Optional

import numpy as np

from src.analysis.examples import ExampleFamily, default_params, generate_example
from src.configuration import DEFAULT_CONFIGURATION, Configuration
from src.errors import AnalysisError, UnverifiedEquilibriumError
from src.flow import solve_social_optimum
from src.game import (
    construct_marginal_cost_equilibrium,
    construct_monopolistic_equilibrium,
    verify_equilibrium,
)
from src.logging import get_logger, log_operation
from src.scenario import Problem, compile_scenario
from src.schemas.reports import SweepRow

logger = get_logger(__name__)

DEFAULT_SWEEP_PARAM = {
    ExampleFamily.MYOPIC_GENERAL: "M",
    ExampleFamily.OLIGOPOLY_LINEAR: "N",
    ExampleFamily.CONVEX_UNBOUNDED: "M",
    ExampleFamily.ELASTIC_OLIGOPOLY: "a",
}

# Small ε and δ keep M = 10 inside the family's M >= 100·max(εR, δR) range.
SWEEP_BASE_PARAMS = {
    ExampleFamily.MYOPIC_GENERAL: {"eps": 0.01, "delta": 0.1, "R": 1.0},
}


def _equilibrium(problem: Problem):
    if problem.profile is not None:
        return problem.profile
    construct = (
        construct_monopolistic_equilibrium
        if problem.net.is_oligopoly()
        else construct_marginal_cost_equilibrium
    )
    profile, _ = construct(
        problem.net, problem.link_costs, problem.session_rate, problem.config
    )
    return profile


def sweep_point(
    family: ExampleFamily, params: Mapping[str, float], value: float, config: Configuration
) -> SweepRow:
    """
    Optimal and equilibrium cost of one member of a family.

    The equilibrium is the scenario's own profile when it ships one, the
    monopolistic construction for oligopolies, and marginal-cost pricing
    otherwise.

    Raises:
        UnverifiedEquilibriumError: If the chosen profile fails verification.
    """
    problem = compile_scenario(generate_example(family, params, config), config)
    optimum = solve_social_optimum(
        problem.net, problem.link_costs, problem.session_rate, problem.config
    )
    profile = _equilibrium(problem)
    report = verify_equilibrium(
        problem.net,
        profile,
        problem.link_costs,
        problem.session_rate,
        problem.config,
        optimum,
    )
    if not report.verified:
        raise UnverifiedEquilibriumError(
            f"{family} at {value:.9g}: profile {report.label!r} fails at relay "
            f"{report.worst_relay} (violation {report.worst_violation:.3g})"
        )
    return SweepRow(
        param=value,
        opt_cost=optimum.cost,
        eq_cost=report.total_cost,
        poa=report.poa_contribution,
    )


def _point(args: tuple) -> SweepRow:
    return sweep_point(*args)


@log_operation("sweep", summarize=lambda rows: {"points": len(rows)})
def sweep(
    family: str,
    start: float,
    stop: float,
    steps: int,
    param: Optional[str] = None,
    base_params: Optional[Mapping[str, float]] = None,
    config: Configuration = DEFAULT_CONFIGURATION,
    workers: Optional[int] = None,
) -> list[SweepRow]:
    """
    Evaluate ``steps`` evenly spaced values of one family parameter.

    Args:
        family: An example family with a sweep parameter.
        start: First value.
        stop: Last value.
        steps: Number of values, at least 1.
        param: Parameter to vary; the family's usual one when omitted.
        base_params: Other parameters, over the sweep defaults.
        config: Solver configuration.
        workers: Processes; config.workers when omitted.

    Returns:
        One row per value, in increasing parameter order.

    Raises:
        AnalysisError: On an unknown family or parameter, or bad steps.
    """
    try:
        kind = ExampleFamily.from_string(str(family))
    except ValueError as e:
        raise AnalysisError(str(e)) from e
    if kind not in DEFAULT_SWEEP_PARAM:
        raise AnalysisError(f"Family {kind} has no sweep")
    param = param or DEFAULT_SWEEP_PARAM[kind]
    if param not in default_params(kind):
        raise AnalysisError(f"Family {kind} has no parameter {param!r}")
    if steps < 1:
        raise AnalysisError(f"A sweep needs at least one step, got {steps}")

    values = sorted(np.linspace(start, stop, steps).tolist())
    if param == "N":
        values = sorted({round(v) for v in values})
    base = {**SWEEP_BASE_PARAMS.get(kind, {}), **(base_params or {})}
    jobs = [(kind, {**base, param: v}, v, config) for v in values]
    logger.info("Sweeping %s over %s=%s..%s in %s points", kind, param, start, stop, len(jobs))

    workers = workers or config.workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_point, jobs))
    return [_point(job) for job in jobs]
