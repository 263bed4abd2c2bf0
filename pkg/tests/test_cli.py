"""End-to-end CLI: emission formats, determinism, diagnostics."""

import csv
import filecmp
import json

import pytest

from packsim.cli import main

BASELINE_TOML = """
pack = "92S9P"

[charger]
i_charge = 15.0
mode = "cc_only"
eta_charge = 0.86481

[sim]
duration_h = 48.0
dt = 1.0
sample_interval = 60.0
"""


@pytest.fixture
def baseline_config(tmp_path):
    path = tmp_path / "baseline.toml"
    path.write_text(BASELINE_TOML, encoding="utf-8")
    return path


def read_report(out_dir):
    return json.loads((out_dir / "report.json").read_text())


class TestSimulate:
    def test_run_from_config(self, baseline_config, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main(["simulate", "--config", str(baseline_config), "--out", str(out)])
        assert rc == 0
        report = read_report(out)["runs"][0]
        assert report["charge_time_h"] == pytest.approx(16.2, rel=5e-3)
        assert "16.20 h" in capsys.readouterr().out
        assert (out / "baseline.csv").exists()

    def test_double_current_halves_time(self, baseline_config, tmp_path):
        out = tmp_path / "out30"
        rc = main(
            [
                "simulate",
                "--config",
                str(baseline_config),
                "--i-charge",
                "30",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        report = read_report(out)["runs"][0]
        assert report["charge_time_h"] == pytest.approx(8.1, rel=5e-3)

    def test_profile_flag_without_config(self, tmp_path):
        out = tmp_path / "nocfg"
        rc = main(
            [
                "simulate",
                "--pack",
                "142S5P",
                "--i-charge",
                "15",
                "--profile",
                "paper",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        report = read_report(out)["runs"][0]
        assert report["name"] == "142S5P"
        assert report["charge_time_h"] == pytest.approx(9.0, rel=5e-3)

    def test_csv_round_trip(self, baseline_config, tmp_path):
        """Emitted CSV parses back to the same shape and printed precision."""
        out = tmp_path / "csv"
        rc = main(
            [
                "simulate",
                "--config",
                str(baseline_config),
                "--duration-h",
                "2.0",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        with (out / "baseline.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0].keys()) == {
            "time_s",
            "mode",
            "soc",
            "pack_voltage_v",
            "pack_current_a",
            "cumulative_ah",
        }
        # 2 h at dt=1 decimated to 60 s: samples at 0, 60, ..., 7200.
        assert len(rows) == 121
        assert rows[0]["mode"] == "cc"
        for row in rows:
            time_s = float(row["time_s"])
            soc = float(row["soc"])
            current = float(row["pack_current_a"])
            cumulative = float(row["cumulative_ah"])
            assert current == 15.0
            # eta * I * t / (3600 C), at the CSV's 6-significant-digit precision
            expect_soc = 0.86481 * 15.0 * time_s / (3600.0 * 210.15)
            assert soc == pytest.approx(expect_soc, abs=1e-6 * max(1.0, expect_soc))
            assert cumulative == pytest.approx(15.0 * time_s / 3600.0, rel=1e-5)

    def test_pack_override_surfaces_reconfigure_warning(self, baseline_config, tmp_path, capsys):
        out = tmp_path / "reconf"
        rc = main(
            [
                "simulate",
                "--config", str(baseline_config),
                "--pack", "142S5P",
                "--out", str(out),
            ]
        )
        assert rc == 0
        report = read_report(out)["runs"][0]
        assert report["name"] == "142S5P"
        assert report["warnings"] == ["cell count 828 -> 710"]
        assert "cell count 828 -> 710" in capsys.readouterr().out

    def test_bad_config_exits_nonzero(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text('pack = "0S5P"\n[charger]\ni_charge = 15.0\n', encoding="utf-8")
        rc = main(["simulate", "--config", str(bad)])
        assert rc != 0
        assert "s must be >= 1" in capsys.readouterr().err

    def test_missing_current_without_config(self, capsys):
        rc = main(["simulate", "--pack", "92S9P"])
        assert rc != 0
        assert "i-charge" in capsys.readouterr().err


class TestCompare:
    ARGS = [
        "compare",
        "--pack", "92S9P",
        "--pack", "46S18P",
        "--pack", "142S5P",
        "--i-charge", "15",
        "--profile", "paper",
        "--format", "svg",
    ]

    def test_reference_comparison_table(self, tmp_path, capsys):
        rc = main(self.ARGS + ["--out", str(tmp_path / "cmp")])
        assert rc == 0
        table = capsys.readouterr().out
        lines = [ln for ln in table.splitlines() if ln and not ln.startswith("-")]
        assert "16.20 h" in table and "32.40 h" in table and "9.00 h" in table
        # Input ordering is preserved in the output.
        order = [ln.split()[0] for ln in lines[1:]]
        assert order == ["92S9P", "46S18P", "142S5P"]
        # Non-conserving rewiring reports its warning verbatim.
        row_142 = next(ln for ln in lines if ln.startswith("142S5P"))
        assert "cell count 828 -> 710" in row_142

    def test_outputs_byte_identical_across_runs_and_jobs(self, tmp_path):
        outs = []
        for name, jobs in [("a", 1), ("b", 1), ("c", 3)]:
            out = tmp_path / name
            rc = main(self.ARGS + ["--out", str(out), "--jobs", str(jobs)])
            assert rc == 0
            outs.append(out)
        files = ["92S9P.csv", "46S18P.csv", "142S5P.csv", "compare.svg", "report.json"]
        for f in files:
            assert filecmp.cmp(outs[0] / f, outs[1] / f, shallow=False), f
            assert filecmp.cmp(outs[0] / f, outs[2] / f, shallow=False), f

    def test_svg_has_three_panels_with_traces(self, tmp_path):
        out = tmp_path / "svgout"
        main(self.ARGS + ["--out", str(out)])
        svg = (out / "compare.svg").read_text()
        assert svg.count("<g id=\"axes_") == 3

    def test_individual_failure_reported_but_run_continues(self, tmp_path, capsys):
        good = tmp_path / "good.toml"
        good.write_text(BASELINE_TOML, encoding="utf-8")
        bad = tmp_path / "bad.toml"
        bad.write_text("pack = 3\n[charger]\ni_charge = 1.0\n", encoding="utf-8")
        rc = main(
            [
                "compare",
                "--scenario", str(good),
                "--scenario", str(bad),
                "--out", str(tmp_path / "cmpfail"),
                "--format", "table",
            ]
        )
        captured = capsys.readouterr()
        assert rc != 0
        assert "good" in captured.out  # the healthy run still reported
        assert "pack" in captured.err


class TestPlan:
    def test_plan_table_and_json(self, tmp_path, capsys):
        out = tmp_path / "plan"
        rc = main(
            [
                "plan",
                "--cells", "828",
                "--i-max", "15",
                "--profile", "paper",
                "--v-max", "420",
                "--out", str(out),
            ]
        )
        assert rc == 0
        table = capsys.readouterr().out
        assert "92S9P" in table
        assert "voltage ceiling" in table
        payload = json.loads((out / "plan.json").read_text())
        assert payload["n_cells"] == 828
        assert len(payload["entries"]) == 18
        feasible = [e for e in payload["entries"] if e["feasible"]]
        assert all(e["s"] <= 100 for e in feasible)

    def test_single_cell_plan(self, tmp_path, capsys):
        rc = main(["plan", "--cells", "1", "--i-max", "15", "--format", "table"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "1S1P" in out

    def test_verify_flag(self, tmp_path, capsys):
        rc = main(
            [
                "plan",
                "--cells", "828",
                "--i-max", "15",
                "--profile", "paper",
                "--verify", "2",
                "--format", "table",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "verification" in out
        assert "rel_delta" in out
