"""Markdown text for each report type."""

from __future__ import annotations

from src.reporting.markdown_builder import MarkdownBuilder
from src.schemas.reports import (
    ConstructionReport,
    EquilibriumReport,
    OptimumReport,
    PriceOfAnarchyReport,
    SuiteReport,
)


def _flows_table(builder: MarkdownBuilder, flows: dict[str, float]) -> None:
    builder.add_table(["link", "flow"], sorted(flows.items()))


def render_optimum(report: OptimumReport) -> str:
    builder = (
        MarkdownBuilder()
        .add_header(f"Socially optimal routing: {report.scenario}")
        .add_bold_text("Session rate:", report.session_rate)
        .add_bold_text("Optimal cost D*:", report.cost)
        .add_bold_text("Marginal gap:", report.gap)
        .add_bold_text("Iterations:", report.iterations)
    )
    if report.admitted_rate is not None:
        builder.add_bold_text("Admitted rate:", report.admitted_rate)
    builder.add_section("Link flows")
    _flows_table(builder, report.flows)
    builder.add_section("Least path marginals")
    builder.add_table(["node", "λ*"], list(report.least_marginals.items()))
    return builder.build()


def _equilibrium_body(builder: MarkdownBuilder, report: EquilibriumReport) -> None:
    verdict = "verified" if report.verified else "NOT verified"
    builder.add_bold_text("Verdict:", verdict)
    builder.add_bold_text("Worst violation:", report.worst_violation)
    if report.worst_relay is not None:
        builder.add_bold_text("Worst relay:", report.worst_relay)
    builder.add_bold_text("Efficiency:", report.efficiency_class)
    builder.add_bold_text("Structure:", report.structure)
    builder.add_bold_text("Total cost:", report.total_cost)
    builder.add_bold_text("Optimal cost:", report.optimal_cost)
    builder.add_bold_text("Cost ratio:", report.poa_contribution)
    if report.flows:
        builder.add_section("Induced link flows")
        _flows_table(builder, report.flows)
    if report.relays:
        builder.add_section("Relays")
        builder.add_table(
            ["relay", "passed", "lower bound", "equality", "profit gap", "honest", "induced", "ideal"],
            [
                (
                    d.relay,
                    d.passed,
                    d.lower_bound_violation,
                    d.equality_violation,
                    d.profit_gap,
                    d.honest_violation,
                    _pairs(d.induced_flows),
                    _pairs(d.ideal_flows),
                )
                for d in report.relays
            ],
        )
    failing = report.failing_relays()
    if failing:
        builder.add_section("Profitable deviations")
        for d in report.relays:
            if d.passed:
                continue
            builder.add_bullet(
                f"{d.relay}: ideal flows {_pairs(d.ideal_flows)} anticipate "
                f"{d.anticipated_profit:.9g} against {d.induced_profit:.9g} induced"
            )
        builder.add_empty_line()
    if report.notes:
        builder.add_section("Notes")
        for note in report.notes:
            builder.add_bullet(note)


def _pairs(flows: dict[str, float]) -> str:
    return ", ".join(f"{k}={v:.6g}" for k, v in flows.items()) or "-"


def render_verification(report: EquilibriumReport) -> str:
    builder = MarkdownBuilder().add_header(f"Equilibrium check: {report.label or 'profile'}")
    _equilibrium_body(builder, report)
    return builder.build()


def render_construction(report: ConstructionReport) -> str:
    builder = MarkdownBuilder().add_header(f"Constructed equilibrium: {report.scheme}")
    builder.add_section("Prices")
    builder.add_table(
        ["relay", "predecessor", "β(0)", "β(R_s)", "constant"],
        [(p.relay, p.predecessor, p.at_zero, p.at_rate, p.constant) for p in report.prices],
    )
    _equilibrium_body(builder, report.equilibrium)
    return builder.build()


def render_poa(report: PriceOfAnarchyReport) -> str:
    builder = (
        MarkdownBuilder()
        .add_header("Price of anarchy")
        .add_bold_text("Ratio:", report.ratio)
        .add_bold_text("Optimal cost:", report.optimal_cost)
    )
    if report.lower_bound:
        builder.add_text("Worst of the supplied equilibria; the game may have worse ones.")
    builder.add_table(
        ["equilibrium", "total cost", "verified"],
        [(e.label, e.total_cost, e.verified) for e in report.equilibria],
    )
    return builder.build()


def render_suite(report: SuiteReport) -> str:
    builder = (
        MarkdownBuilder()
        .add_header(f"Property suite: {report.suite}")
        .add_bold_text("Trials:", report.trials)
        .add_bold_text("Seed:", report.seed)
        .add_bold_text("Premise held:", report.checked)
        .add_bold_text("Counterexamples:", len(report.counterexamples))
    )
    for entry in report.counterexamples:
        builder.add_bullet(f"trial {entry['trial']}: {entry['message']}")
    return builder.build()
