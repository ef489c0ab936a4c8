import csv

import pytest

from suitesearch.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestRunCommand:
    def test_smoke_run_writes_csvs(self, tmp_path, capsys):
        code = run_cli(
            "run", "--family", "gradient", "--z-list", "1,3", "--budget", "50",
            "--reps", "2", "--seed", "42", "--out-dir", str(tmp_path),
        )
        assert code == 0
        with (tmp_path / "raw.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 2 * 2 * 4
        assert (tmp_path / "summary.csv").exists()
        assert (tmp_path / "manifest.txt").exists()
        assert "16 runs" in capsys.readouterr().out

    def test_algorithm_subset(self, tmp_path):
        code = run_cli(
            "run", "--family", "deceptive", "--z-list", "2", "--budget", "40",
            "--reps", "1", "--seed", "1", "--algorithms", "mio,random",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        with (tmp_path / "raw.csv").open() as fh:
            algos = {row["algorithm"] for row in csv.DictReader(fh)}
        assert algos == {"mio", "random"}

    def test_negative_z_is_a_flag_error(self, tmp_path, capsys):
        code = run_cli("run", "--family", "plateau", "--z-list", "-3",
                       "--out-dir", str(tmp_path))
        assert code == 2
        err = capsys.readouterr().err
        assert "--z-list" in err

    def test_unknown_family_is_a_flag_error(self, capsys):
        assert run_cli("run", "--family", "mesa") == 2
        assert "--family" in capsys.readouterr().err

    def test_unknown_algorithm_is_a_flag_error(self, capsys):
        assert run_cli("run", "--family", "gradient", "--algorithms", "mio,abc") == 2
        assert "--algorithms" in capsys.readouterr().err

    def test_missing_family_is_reported(self, capsys):
        assert run_cli("run") == 2
        assert "--family" in capsys.readouterr().err

    def test_config_file_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "plan.cfg"
        cfg.write_text(
            "family = gradient\nz_list = 2\nbudget = 30\nreps = 1\n"
            f"seed = 9\nalgorithms = random\nout_dir = {tmp_path / 'out'}\n"
        )
        assert run_cli("run", "--config", str(cfg)) == 0
        assert (tmp_path / "out" / "raw.csv").exists()

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "plan.cfg"
        cfg.write_text("family = gradient\nz_list = 2\nbudget = 30\nreps = 1\nseed = 9\n")
        out = tmp_path / "flagged"
        code = run_cli(
            "run", "--config", str(cfg), "--algorithms", "random",
            "--out-dir", str(out), "--reps", "2",
        )
        assert code == 0
        with (out / "raw.csv").open() as fh:
            assert len(list(csv.DictReader(fh))) == 2

    def test_sut_family_ignores_z_list(self, tmp_path):
        code = run_cli(
            "run", "--family", "triangle", "--budget", "60", "--reps", "1",
            "--seed", "3", "--algorithms", "random", "--out-dir", str(tmp_path),
        )
        assert code == 0


class TestStatsCommand:
    def test_recomputes_identical_summary(self, tmp_path, capsys):
        out = tmp_path / "exp"
        assert run_cli(
            "run", "--family", "gradient", "--z-list", "1,2", "--budget", "60",
            "--reps", "3", "--seed", "5", "--out-dir", str(out),
        ) == 0
        original = (out / "summary.csv").read_bytes()
        redone = tmp_path / "again.csv"
        assert run_cli("stats", str(out / "raw.csv"), "--out", str(redone)) == 0
        assert redone.read_bytes() == original

    def test_missing_file_fails_cleanly(self, capsys):
        assert run_cli("stats", "/nonexistent/raw.csv") == 1
        assert "error:" in capsys.readouterr().err

    def test_empty_raw_fails_cleanly(self, tmp_path, capsys):
        raw = tmp_path / "raw.csv"
        raw.write_text("schema_version,family\n")
        assert run_cli("stats", str(raw)) == 2


class TestReplicationCommands:
    def test_replicate_figures_tiny(self, tmp_path):
        code = run_cli(
            "replicate-figures", "--out-dir", str(tmp_path), "--reps", "1",
            "--seed", "2", "--workers", "2",
        )
        assert code == 0
        for family in ("gradient", "plateau", "deceptive", "infeasible"):
            assert (tmp_path / f"fig-{family}" / "summary.csv").exists()
        with (tmp_path / "fig-infeasible" / "raw.csv").open() as fh:
            algos = {row["algorithm"] for row in csv.DictReader(fh)}
        assert "mio-nofds" in algos

    def test_replicate_table1_tiny(self, tmp_path):
        code = run_cli(
            "replicate-table1", "--out-dir", str(tmp_path), "--reps", "1",
            "--seed", "2", "--workers", "2",
        )
        assert code == 0
        for name in ("expint", "gammq", "triangle"):
            with (tmp_path / f"table1-{name}" / "raw.csv").open() as fh:
                rows = list(csv.DictReader(fh))
            assert len(rows) == 4
            assert all(int(r["evaluations"]) <= 5000 for r in rows)
