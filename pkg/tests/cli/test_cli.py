"""
Unit tests for cli.py

Commands run in-process through ``main``; reports are read back from the
captured standard output.
"""

import json
from pathlib import Path
from unittest.mock import patch

import pytest

from src.analysis import PropertySuite, TrialOutcome
from src.analysis import properties
from src.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from src.scenario import loads

from tests.data.scenario_data import DUOPOLY_TEXT

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"


def scenario(name):
    return str(SCENARIOS / name)


def flat_profile_file(tmp_path, level):
    path = tmp_path / f"flat-{level}.json"
    price = {"kind": "constant", "value": level}
    path.write_text(
        json.dumps(
            {
                "schema": 1,
                "profile": {
                    "prices": [
                        {"relay": "r1", "predecessor": "s", "price": price},
                        {"relay": "r2", "predecessor": "s", "price": price},
                    ],
                    "pinned_flows": [
                        {"tail": "s", "head": "r1", "flow": 2.0},
                        {"tail": "s", "head": "r2", "flow": 1.0},
                    ],
                },
            }
        )
    )
    return str(path)


class TestOptimal:
    """Test cases for the optimal command."""

    def test_duopoly_json(self, capsys):
        """Test the optimum cost and flows as JSON."""
        assert main(["optimal", scenario("duopoly.json"), "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["scenario"] == "duopoly"
        assert report["cost"] == pytest.approx(3.0, abs=1e-6)
        assert report["flows"]["s->r1"] == pytest.approx(2.0, abs=1e-5)
        assert report["admitted_rate"] is None

    def test_elastic_markdown(self, capsys):
        """Test that an elastic source reports its admitted rate."""
        assert main(["optimal", scenario("elastic.json")]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("# Socially optimal routing: elastic-oligopoly-n2")
        assert "**Admitted rate:** 0.66666" in out

    def test_missing_file(self, capsys, tmp_path):
        """Test that an unreadable scenario is an input error."""
        assert main(["optimal", str(tmp_path / "nope.json")]) == EXIT_INPUT
        assert "nope.json" in capsys.readouterr().err

    def test_unknown_command(self):
        """Test that argparse rejects unknown commands with status 2."""
        with pytest.raises(SystemExit) as info:
            main(["solve", scenario("duopoly.json")])
        assert info.value.code == 2


class TestVerify:
    """Test cases for the verify command."""

    def test_shipped_profile(self, capsys):
        """Test that the general game's own profile verifies."""
        assert main(["verify", scenario("myopic_general.json")]) == EXIT_OK
        out = capsys.readouterr().out
        assert "**Verdict:** verified" in out
        assert "**Efficiency:** inefficient" in out

    def test_underpriced_profile_fails(self, capsys, tmp_path):
        """Test that a flat price of 1 is rejected with exit status 1."""
        path = flat_profile_file(tmp_path, 1.0)
        assert main(["verify", scenario("duopoly.json"), "--profile", path, "--json"]) == (
            EXIT_FAILED
        )
        report = json.loads(capsys.readouterr().out)
        assert report["label"] == "flat-1.0"
        assert not report["verified"]
        assert report["worst_relay"] == "r1"

    def test_no_profile_anywhere(self, capsys):
        """Test that a scenario without a profile needs --profile."""
        assert main(["verify", scenario("duopoly.json")]) == EXIT_INPUT
        assert "--profile" in capsys.readouterr().err


class TestEquilibriumAndPoa:
    """Test cases for constructing equilibria and their cost ratio."""

    def test_monopolistic_profile_round_trip(self, capsys, tmp_path):
        """Test that a saved monopolistic profile gives the duopoly ratio 1.5."""
        saved = tmp_path / "monopolistic.json"
        code = main(
            [
                "equilibrium",
                scenario("duopoly.json"),
                "--scheme",
                "monopolistic",
                "--output",
                str(saved),
            ]
        )
        assert code == EXIT_OK
        assert "# Constructed equilibrium: monopolistic" in capsys.readouterr().out
        assert saved.exists()

        code = main(["poa", scenario("duopoly.json"), "--equilibria", str(saved), "--json"])
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["ratio"] == pytest.approx(1.5, abs=1e-5)

    @pytest.mark.slow
    def test_linear_oligopoly_ratio_is_relay_count(self, capsys, tmp_path):
        """Test that four identical linear relays give a ratio of four."""
        target = tmp_path / "linear4.json"
        assert main(["generate", "oligopoly-linear", "--params", "N=4", "--output", str(target)]) == EXIT_OK
        code = main(
            ["poa", str(target), "--construct", "marginal-cost", "monopolistic", "--json"]
        )
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["ratio"] == pytest.approx(4.0, abs=1e-3)

    def test_poa_rejects_non_equilibria(self, capsys, tmp_path):
        """Test that an unverified profile makes poa fail."""
        path = flat_profile_file(tmp_path, 1.0)
        assert main(["poa", scenario("duopoly.json"), "--equilibria", path]) == EXIT_FAILED
        assert "flat-1.0" in capsys.readouterr().err

    def test_monopolistic_needs_oligopoly(self, capsys):
        """Test that the monopolistic scheme refuses general networks."""
        code = main(["equilibrium", scenario("myopic_general.json"), "--scheme", "monopolistic"])
        assert code == EXIT_FAILED
        assert "oligopoly" in capsys.readouterr().err


class TestGenerate:
    """Test cases for the generate command."""

    def test_stdout(self, capsys):
        """Test that the scenario is written to standard output."""
        assert main(["generate", "oligopoly-linear", "--params", "N=4"]) == EXIT_OK
        scenario_out = loads(capsys.readouterr().out)
        assert scenario_out.name == "oligopoly-linear-n4"

    def test_output_file(self, tmp_path):
        """Test that --output writes a loadable file."""
        target = tmp_path / "myopic.json"
        assert main(["generate", "myopic-general", "--output", str(target)]) == EXIT_OK
        assert loads(target.read_text()).profile.label == "myopic-general"

    @pytest.mark.parametrize("params", [["M"], ["M=ten"], ["M=5"]])
    def test_bad_params(self, capsys, params):
        """Test malformed and out-of-range parameters."""
        assert main(["generate", "myopic-general", "--params", *params]) == EXIT_INPUT
        assert "error: " in capsys.readouterr().err


class TestSweep:
    """Test cases for the sweep command."""

    def test_csv(self, capsys):
        """Test the CSV header and one row per relay count."""
        code = main(["sweep", "oligopoly-linear", "--from", "2", "--to", "3", "--steps", "2"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "param,opt_cost,eq_cost,poa"
        assert [line.split(",")[0] for line in lines[1:]] == ["2", "3"]
        assert float(lines[1].split(",")[3]) == pytest.approx(2.0, rel=1e-4)


class TestCheck:
    """Test cases for the check command with a stub suite."""

    def test_counterexamples_are_dumped(self, capsys, tmp_path):
        """Test exit status 1 and one file per counterexample."""
        game = loads(DUOPOLY_TEXT)

        def failing(rng, config):
            return TrialOutcome(checked=True, message="inefficient", scenario=game)

        with patch.dict(properties._TRIALS, {PropertySuite.FOCAL: failing}):
            code = main(
                ["check", "focal", "--trials", "2", "--seed", "4", "--dump-dir", str(tmp_path)]
            )
        assert code == EXIT_FAILED
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "focal-trial0.json",
            "focal-trial1.json",
        ]
        assert "**Counterexamples:** 2" in capsys.readouterr().out

    def test_clean_run(self, capsys):
        """Test exit status 0 when every trial holds."""

        def holding(rng, config):
            return TrialOutcome(checked=True)

        with patch.dict(properties._TRIALS, {PropertySuite.FOCAL: holding}):
            assert main(["check", "focal", "--trials", "3", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["checked"] == 3
        assert report["counterexamples"] == []
