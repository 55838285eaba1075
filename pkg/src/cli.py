#!/usr/bin/env python3
"""
relay-pricing command line.

Every command prints a markdown report, or sorted-key JSON with ``--json``.
Exit codes: 0 on success, 1 when a profile fails verification, a solver
does not converge or a property suite finds a counterexample, 2 on bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Optional, Sequence

from src.analysis import (
    DEFAULT_SWEEP_PARAM,
    ExampleFamily,
    PropertySuite,
    admitted_rate,
    generate_example,
    price_of_anarchy,
    run_trials,
    sweep,
)
from src.configuration import Configuration
from src.errors import (
    AnalysisError,
    ConstructionError,
    ConvergenceError,
    InfeasibleRoutingError,
    NetworkError,
    RelayPricingError,
    ScenarioError,
    UnverifiedEquilibriumError,
)
from src.flow import path_min_marginals, solve_social_optimum
from src.game import (
    MARGINAL_COST,
    MONOPOLISTIC,
    PricingProfile,
    construct_marginal_cost_equilibrium,
    construct_monopolistic_equilibrium,
    verify_equilibrium,
)
from src.logging import configure_logging, get_logger
from src.reporting import (
    render_construction,
    render_optimum,
    render_poa,
    render_suite,
    render_verification,
    write_sweep_csv,
)
from src.scenario import (
    Problem,
    compile_profile,
    dumps,
    load_problem,
    load_profile,
    profile_to_spec,
    save,
    save_profile,
)
from src.schemas.reports import ConstructionReport, OptimumReport, PriceSummary

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

SCHEMES = {
    MARGINAL_COST: construct_marginal_cost_equilibrium,
    MONOPOLISTIC: construct_monopolistic_equilibrium,
}


def _emit(args: argparse.Namespace, report: Any, render) -> None:
    print(str(report) if args.json else render(report))


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {"grid_steps": args.grid, "tol": args.tol, "workers": args.workers}


def _problem(args: argparse.Namespace) -> Problem:
    return load_problem(args.scenario, Configuration.from_settings(), _overrides(args))


def _config(args: argparse.Namespace) -> Configuration:
    return Configuration.from_settings().with_overrides(**_overrides(args))


def _parse_params(pairs: Sequence[str]) -> dict[str, float]:
    params = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep:
            raise AnalysisError(f"Parameters are name=value pairs, got {pair!r}")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise AnalysisError(f"Parameter {name} needs a number, got {value!r}") from None
    return params


def cmd_optimal(args: argparse.Namespace) -> int:
    problem = _problem(args)
    net = problem.net
    optimum = solve_social_optimum(
        net, problem.link_costs, problem.session_rate, problem.config
    )
    least = path_min_marginals(net, optimum.routing, problem.link_costs)
    report = OptimumReport(
        scenario=problem.name or Path(args.scenario).stem,
        session_rate=problem.session_rate,
        cost=optimum.cost,
        gap=optimum.gap,
        iterations=optimum.iterations,
        flows=optimum.routing.describe(net),
        least_marginals={net.name_of(n): v for n, v in sorted(least.items())},
        admitted_rate=(
            admitted_rate(net, optimum.routing) if problem.overflow is not None else None
        ),
    )
    _emit(args, report, render_optimum)
    return EXIT_OK


def _price_summaries(problem: Problem, profile: PricingProfile) -> list[PriceSummary]:
    name = problem.net.name_of
    rows = []
    for (relay, pred), fn in sorted(profile.prices.items()):
        rows.append(
            PriceSummary(
                relay=name(relay),
                predecessor=name(pred),
                at_zero=float(fn(0.0)),
                at_rate=float(fn(min(problem.session_rate, fn.domain_hi))),
                constant=fn.max_value() - fn.min_value() <= 1e-12,
            )
        )
    return rows


def cmd_equilibrium(args: argparse.Namespace) -> int:
    problem = _problem(args)
    construct = SCHEMES[args.scheme]
    profile, _ = construct(
        problem.net, problem.link_costs, problem.session_rate, problem.config
    )
    report = verify_equilibrium(
        problem.net, profile, problem.link_costs, problem.session_rate, problem.config
    )
    if args.output:
        save_profile(profile_to_spec(profile, problem.net), args.output)
    _emit(
        args,
        ConstructionReport(args.scheme, _price_summaries(problem, profile), report),
        render_construction,
    )
    return EXIT_OK if report.verified else EXIT_FAILED


def _profile_from(problem: Problem, path: str) -> PricingProfile:
    spec = load_profile(path)
    profile = compile_profile(
        spec, problem.net, problem.session_rate, problem.config, path
    )
    if not profile.label:
        profile = replace(profile, label=Path(path).stem)
    return problem.with_tie_breaks(profile)


def cmd_verify(args: argparse.Namespace) -> int:
    problem = _problem(args)
    if args.profile:
        profile = _profile_from(problem, args.profile)
    elif problem.profile is not None:
        profile = problem.profile
    else:
        raise ScenarioError("Scenario ships no profile; pass --profile", path=args.scenario)
    report = verify_equilibrium(
        problem.net, profile, problem.link_costs, problem.session_rate, problem.config
    )
    _emit(args, report, render_verification)
    if not report.verified:
        logger.error("Profile fails at relays %s", ", ".join(report.failing_relays()))
    return EXIT_OK if report.verified else EXIT_FAILED


def cmd_poa(args: argparse.Namespace) -> int:
    problem = _problem(args)
    profiles = [_profile_from(problem, path) for path in args.equilibria or ()]
    for scheme in args.construct or ():
        profile, _ = SCHEMES[scheme](
            problem.net, problem.link_costs, problem.session_rate, problem.config
        )
        profiles.append(profile)
    if not profiles and problem.profile is not None:
        profiles.append(problem.profile)
    report = price_of_anarchy(
        problem.net, problem.link_costs, problem.session_rate, profiles, problem.config
    )
    _emit(args, report, render_poa)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    scenario = generate_example(args.family, _parse_params(args.params), _config(args))
    if args.output:
        save(scenario, args.output)
    else:
        sys.stdout.write(dumps(scenario))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep(
        args.family,
        args.start,
        args.stop,
        args.steps,
        param=args.param,
        base_params=_parse_params(args.params),
        config=_config(args),
        workers=args.workers,
    )
    if args.json:
        print(json.dumps([r.to_dict() for r in rows], indent=2, sort_keys=True))
    else:
        write_sweep_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    report = run_trials(
        args.suite, args.trials, args.seed or 0, _config(args), args.workers
    )
    if args.dump_dir and report.counterexamples:
        folder = Path(args.dump_dir)
        folder.mkdir(parents=True, exist_ok=True)
        for entry in report.counterexamples:
            if "scenario" not in entry:
                continue
            target = folder / f"{report.suite}-trial{entry['trial']}.json"
            target.write_text(json.dumps(entry["scenario"], indent=2) + "\n", encoding="utf-8")
            logger.info("Counterexample written to %s", target)
    _emit(args, report, render_suite)
    return EXIT_OK if report.passed else EXIT_FAILED


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, help="Grid steps for convolutions and checks")
    common.add_argument("--tol", type=float, help="Absolute tolerance of equilibrium checks")
    common.add_argument("--seed", type=int, help="Root seed of randomized suites")
    common.add_argument("--json", action="store_true", help="Print JSON instead of markdown")
    common.add_argument("--log-level", default=None, help="debug, info, warning or error")
    common.add_argument("--workers", type=int, help="Processes for sweeps and suites")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="relay-pricing",
        description="Equilibria and efficiency of relay pricing games",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("optimal", parents=[common], help="Socially optimal routing")
    p.add_argument("scenario")
    p.set_defaults(handler=cmd_optimal)

    p = commands.add_parser("equilibrium", parents=[common], help="Construct and verify")
    p.add_argument("scenario")
    p.add_argument("--scheme", choices=sorted(SCHEMES), default=MARGINAL_COST)
    p.add_argument("--output", help="Write the constructed profile here")
    p.set_defaults(handler=cmd_equilibrium)

    p = commands.add_parser("verify", parents=[common], help="Verify a pricing profile")
    p.add_argument("scenario")
    p.add_argument("--profile", help="Profile file; the scenario's own profile by default")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("poa", parents=[common], help="Cost ratio of equilibria")
    p.add_argument("scenario")
    p.add_argument("--equilibria", nargs="+", metavar="FILE", help="Profile files")
    p.add_argument("--construct", nargs="+", choices=sorted(SCHEMES), help="Also construct")
    p.set_defaults(handler=cmd_poa)

    p = commands.add_parser("generate", parents=[common], help="Emit an example scenario")
    p.add_argument("family", choices=[str(f) for f in ExampleFamily])
    p.add_argument("--params", nargs="*", default=[], metavar="NAME=VALUE")
    p.add_argument("--output", help="Write here instead of standard output")
    p.set_defaults(handler=cmd_generate)

    p = commands.add_parser("sweep", parents=[common], help="CSV of costs over a parameter")
    p.add_argument("family", choices=[str(f) for f in DEFAULT_SWEEP_PARAM])
    p.add_argument("--param", help="Parameter to vary")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--params", nargs="*", default=[], metavar="NAME=VALUE")
    p.set_defaults(handler=cmd_sweep)

    p = commands.add_parser("check", parents=[common], help="Run a property suite")
    p.add_argument("suite", choices=[str(s) for s in PropertySuite])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--dump-dir", help="Write counterexample scenarios here")
    p.set_defaults(handler=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(level=args.log_level, suppression_mode="cli")
    try:
        return args.handler(args)
    except (UnverifiedEquilibriumError, ConvergenceError, ConstructionError) as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (ScenarioError, NetworkError, AnalysisError, InfeasibleRoutingError) as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RelayPricingError as e:
        logger.error("%s: %s", type(e).__name__, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
