"""
Unit tests for reporting/renderers.py and reporting/csv_writer.py
"""

import io

from src.reporting import (
    SWEEP_HEADER,
    render_construction,
    render_optimum,
    render_poa,
    render_suite,
    render_verification,
    write_sweep_csv,
)
from src.schemas.reports import (
    ConstructionReport,
    EquilibriumCost,
    EquilibriumReport,
    OptimumReport,
    PriceOfAnarchyReport,
    PriceSummary,
    RelayDiagnostic,
    SuiteReport,
    SweepRow,
)


def failed_report():
    return EquilibriumReport(
        label="flat-1.0",
        verified=False,
        worst_violation=0.5,
        worst_relay="r1",
        efficient=True,
        structure="everywhere-competitive",
        structure_flags={"competitive": True},
        total_cost=3.0,
        optimal_cost=3.0,
        poa_contribution=1.0,
        flows={"s->r1": 2.0, "s->r2": 1.0},
        relays=[
            RelayDiagnostic(
                relay="r1",
                profit_gap=0.5,
                induced_flows={"s": 2.0},
                ideal_flows={"s": 1.0},
                anticipated_profit=0.5,
                induced_profit=0.0,
                passed=False,
            ),
            RelayDiagnostic(relay="r2", induced_flows={"s": 1.0}, ideal_flows={"s": 1.0}),
        ],
        notes=["tie broken by pinned flows"],
    )


class TestRenderers:
    """Test cases for the text reports."""

    def test_optimum(self):
        """Test that the optimum report lists flows and the admitted rate."""
        text = render_optimum(
            OptimumReport(
                scenario="elastic",
                session_rate=1.0,
                cost=0.5,
                gap=1e-7,
                iterations=12,
                flows={"s->w": 1.0 / 3.0},
                least_marginals={"s": 1.0 / 3.0},
                admitted_rate=2.0 / 3.0,
            )
        )
        assert text.startswith("# Socially optimal routing: elastic")
        assert "**Admitted rate:** 0.666666667" in text
        assert "| s->w | 0.333333333 |" in text

    def test_optimum_without_overflow(self):
        """Test that inelastic sources print no admitted rate."""
        text = render_optimum(OptimumReport("duopoly", 3.0, 3.0, 0.0, 5))
        assert "Admitted rate" not in text

    def test_failed_verification_lists_deviation(self):
        """Test that a failing relay is reported with its ideal flows."""
        text = render_verification(failed_report())
        assert "**Verdict:** NOT verified" in text
        assert "**Worst relay:** r1" in text
        assert "## Profitable deviations" in text
        assert "- r1: ideal flows s=1 anticipate 0.5 against 0 induced" in text
        assert "- tie broken by pinned flows" in text

    def test_construction_prices(self):
        """Test the price table of a constructed equilibrium."""
        report = ConstructionReport(
            scheme="monopolistic",
            prices=[PriceSummary("r1", "s", 4.5, 3.0, False)],
            equilibrium=failed_report(),
        )
        text = render_construction(report)
        assert "# Constructed equilibrium: monopolistic" in text
        assert "| r1 | s | 4.5 | 3 | no |" in text

    def test_poa(self):
        """Test the ratio and the equilibrium table."""
        text = render_poa(
            PriceOfAnarchyReport(1.5, 3.0, [EquilibriumCost("monopolistic", 4.5, True)])
        )
        assert "**Ratio:** 1.5" in text
        assert "| monopolistic | 4.5 | yes |" in text

    def test_suite(self):
        """Test that counterexamples are listed by trial."""
        report = SuiteReport("focal", 4, 7, 3, [{"trial": 2, "message": "inefficient"}])
        text = render_suite(report)
        assert "**Counterexamples:** 1" in text
        assert "- trial 2: inefficient" in text


class TestJsonReports:
    """Test cases for the JSON form of reports."""

    def test_floats_are_rounded(self):
        """Test nine significant digits in the dictionary form."""
        row = SweepRow(param=1.0, opt_cost=1.0 / 3.0, eq_cost=1.0, poa=3.0)
        assert row.to_dict()["opt_cost"] == 0.333333333

    def test_failing_relays(self):
        """Test the names of relays that did not pass."""
        assert failed_report().failing_relays() == ["r1"]
        assert failed_report().efficiency_class == "efficient"


class TestSweepCsv:
    """Test cases for CSV output."""

    def test_header_and_rows(self):
        """Test the fixed header and nine-digit values."""
        stream = io.StringIO()
        write_sweep_csv([SweepRow(2, 1.0 / 3.0, 2.0 / 3.0, 2.0)], stream)
        lines = stream.getvalue().split("\n")
        assert lines[0] == ",".join(SWEEP_HEADER) == "param,opt_cost,eq_cost,poa"
        assert lines[1] == "2,0.333333333,0.666666667,2"
        assert lines[2] == ""
