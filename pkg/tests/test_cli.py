"""CLI surface: subcommands, outputs, exit codes, fixture resolution."""

import json
from pathlib import Path

import pytest

from votexfer.cli import main

FIXTURES = Path(__file__).parent.parent / "src" / "votexfer" / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExample1:
    def test_default_alpha_prints_paper_totals(self, capsys):
        code, out, _ = run(capsys, "example1")
        assert code == 0
        assert "DVT total 52.000000" in out
        assert "NVT total 53.125000" in out
        assert "52.142857" in out

    def test_alpha_zero_totals_equal_list_shares(self, capsys):
        code, out, _ = run(capsys, "example1", "--alpha", "0")
        assert code == 0
        assert "DVT total 55.000000" in out  # pure list: 55/45
        assert "NVT total 57.812500" in out  # 185/320


class TestCurves:
    def test_csv_rows(self, capsys, tmp_path):
        out_file = tmp_path / "curves.csv"
        code, _, _ = run(capsys, "curves", "--alpha", "0.3", "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "x,side,formula,seat_share"
        assert "0.6,dominant,NVT,0.65" in lines
        assert "0.9,inferior,DVT,0.87" in lines

    def test_alpha_06_row(self, capsys):
        code, out, _ = run(capsys, "curves", "--alpha", "0.6", "--grid-step", "0.05")
        assert code == 0
        assert "0.5,dominant,DVT,0.8" in out.splitlines()

    def test_alpha_one_dominant_constant(self, capsys):
        code, out, _ = run(capsys, "curves", "--alpha", "1.0", "--grid-step", "0.1")
        assert code == 0
        rows = [line for line in out.splitlines() if ",dominant," in line]
        assert rows and all(line.endswith(",1") for line in rows)

    def test_plot_rendered_alongside_csv(self, capsys, tmp_path):
        out_file = tmp_path / "curves.csv"
        png = tmp_path / "curves.png"
        code, _, _ = run(
            capsys, "curves", "--alpha", "0.3", "--grid-step", "0.05",
            "--out", str(out_file), "--plot", str(png),
        )
        assert code == 0
        assert out_file.exists()
        assert png.stat().st_size > 1000


class TestAllocate:
    def test_hungary_nvt_93(self, capsys):
        code, out, _ = run(
            capsys, "allocate", "--fixture", "hungary2014",
            "--formula", "nvt", "--list-seats", "93",
        )
        assert code == 0
        payload = json.loads(out)
        seats = {row["party"]: row["total_seats"] for row in payload["parties"]}
        assert seats == {
            "FIDESZ-KDNP": 133,
            "MSZP-EGYUTT-DK-PM-MLP": 38,
            "JOBBIK": 23,
            "LMP": 5,
        }
        assert payload["total_seats"] == 199

    def test_zero_list_seats(self, capsys):
        code, out, _ = run(
            capsys, "allocate", "--fixture", "hungary2014",
            "--formula", "dvt", "--list-seats", "0",
        )
        payload = json.loads(out)
        seats = {row["party"]: row["total_seats"] for row in payload["parties"]}
        assert code == 0
        assert seats["FIDESZ-KDNP"] == 96
        assert seats["JOBBIK"] == 0

    def test_election_csv_source(self, capsys):
        code, out, _ = run(
            capsys, "allocate", "--election", str(FIXTURES / "example1.csv"),
            "--formula", "pvt", "--list-seats", "10", "--threshold", "0",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["total_seats"] == 12

    def test_missing_fixture_is_data_error(self, capsys):
        code, _, err = run(
            capsys, "allocate", "--fixture", "nope",
            "--formula", "nvt", "--list-seats", "93",
        )
        assert code == 3
        assert json.loads(err)["error"]["type"] == "ValidationError"

    def test_fixture_dir_override(self, capsys, tmp_path, monkeypatch):
        custom = tmp_path / "fixtures"
        custom.mkdir()
        (custom / "mine.csv").write_text(
            (FIXTURES / "hungary2014.csv").read_text(encoding="utf-8"),
            encoding="utf-8",
        )
        monkeypatch.setenv("VOTEXFER_FIXTURE_DIR", str(custom))
        code, out, _ = run(
            capsys, "allocate", "--fixture", "mine",
            "--formula", "nvt", "--list-seats", "93",
        )
        assert code == 0
        assert json.loads(out)["total_seats"] == 199


class TestSweep:
    def test_pvt_min_diff_at_77(self, capsys, tmp_path):
        out_file = tmp_path / "sweep.csv"
        code, out, _ = run(
            capsys, "sweep", "--fixture", "hungary2014", "--formula", "pvt",
            "--out", str(out_file),
        )
        assert code == 0
        assert '"min_diff_at": 77' in out
        payload = json.loads(out)
        seats = {r["party"]: r["total_seats"] for r in payload["allocation_at_min"]["parties"]}
        assert seats["FIDESZ-KDNP"] == 122
        assert out_file.read_text().startswith("list_seats,formula,party,")

    def test_supermajority_flag(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--fixture", "hungary2014", "--formula", "pvt",
            "--supermajority", "2/3",
        )
        assert code == 0
        assert json.loads(out)["supermajority_boundary"] == 75

    def test_plots_rendered(self, capsys, tmp_path):
        share = tmp_path / "share.png"
        diff = tmp_path / "diff.png"
        code, _, _ = run(
            capsys, "sweep", "--fixture", "hungary2014", "--formula", "nvt",
            "--min", "80", "--max", "100",
            "--plot-share", str(share), "--plot-diff", str(diff),
        )
        assert code == 0
        assert share.stat().st_size > 1000
        assert diff.stat().st_size > 1000


class TestSimulate:
    def test_summary_and_sweep(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(
            '{"k": 0.52, "h": 0.15, "alpha": 0.5, "runs": 300, "seed": 12}'
        )
        sweep_csv = tmp_path / "sweep.csv"
        code, out, _ = run(
            capsys, "simulate", "--config", str(config),
            "--k-sweep", "0.51,0.52", "--sweep-out", str(sweep_csv),
        )
        assert code == 0
        payload = json.loads(out)
        assert sum(payload["cells"].values()) == 300
        lines = sweep_csv.read_text().splitlines()
        assert lines[0].startswith("k,formula,mean_seat_share")
        assert len(lines) == 1 + 2 * 3

    def test_missing_seed_is_data_error(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"k": 0.52, "h": 0.15, "alpha": 0.5, "runs": 300}')
        code, _, err = run(capsys, "simulate", "--config", str(config))
        assert code == 3
        assert "seed" in json.loads(err)["error"]["message"]

    def test_reproducible_output(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(
            '{"k": 0.52, "h": 0.15, "alpha": 0.5, "runs": 200, "seed": 5}'
        )
        _, out_a, _ = run(capsys, "simulate", "--config", str(config))
        _, out_b, _ = run(capsys, "simulate", "--config", str(config))
        assert out_a == out_b


class TestManipulate:
    def test_stronghold_split_report(self, capsys, tmp_path):
        election = tmp_path / "e.csv"
        election.write_text(
            "district_id,party,votes\n"
            "d1,A,8000\nd1,B,2000\nd2,A,3000\nd2,B,7000\n"
        )
        plan = tmp_path / "plan.json"
        plan.write_text(
            json.dumps(
                {
                    "strategy": "stronghold_split",
                    "district_id": "d1",
                    "party": "A",
                    "kept_margin": 1,
                    "formula": "pvt",
                    "alpha": 0.5,
                }
            )
        )
        code, out, _ = run(
            capsys, "manipulate", "--election", str(election), "--plan", str(plan)
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["profitable"] is True
        assert payload["delta"] > 0
        assert payload["strategy"] == "stronghold_split"

    def test_deliberate_loss_report(self, capsys, tmp_path):
        election = tmp_path / "e.csv"
        election.write_text(
            "district_id,party,votes\nd1,A,51\nd1,B,49\nd2,A,10\nd2,B,90\n"
        )
        plan = tmp_path / "plan.json"
        plan.write_text(
            json.dumps(
                {
                    "strategy": "deliberate_loss",
                    "district_id": "d1",
                    "party": "A",
                    "formula": "dvt",
                    "alpha": 0.3,
                }
            )
        )
        code, out, _ = run(
            capsys, "manipulate", "--election", str(election), "--plan", str(plan)
        )
        assert code == 0
        assert json.loads(out)["profitable"] is False


class TestVotesplit:
    def test_fixture_table(self, capsys, tmp_path):
        out_csv = tmp_path / "split.csv"
        code, out, _ = run(
            capsys, "votesplit", "--rows", "hungary2014_votesplit",
            "--out", str(out_csv),
        )
        assert code == 0
        assert "-1.0714%" in out
        assert "+1.6902%" in out
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "party,list_votes,candidate_votes,split"


class TestReport:
    def test_report_writes_csvs_and_figures(self, capsys, tmp_path):
        out_dir = tmp_path / "report"
        code, out, _ = run(
            capsys, "report", "--out-dir", str(out_dir),
            "--min", "85", "--max", "100",
        )
        assert code == 0
        for name in (
            "sweep_dvt.csv",
            "sweep_pvt.csv",
            "sweep_nvt.csv",
            "seat_shares.png",
            "seat_diff.png",
            "summary.json",
        ):
            assert (out_dir / name).exists(), name
        summary = json.loads((out_dir / "summary.json").read_text())
        assert summary["formulas"]["NVT"]["min_diff_at"] == 93


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["allocate", "--bogus"])
        assert err.value.code == 2

    def test_missing_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2

    def test_unknown_formula_is_data_error(self, capsys):
        code, _, err = run(
            capsys, "allocate", "--fixture", "hungary2014",
            "--formula", "xyz", "--list-seats", "93",
        )
        assert code == 3
        assert "formula" in json.loads(err)["error"]["message"]
