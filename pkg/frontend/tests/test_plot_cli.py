"""Exit codes, stderr messages, and emitted files of the `plot` command."""

from __future__ import annotations

import subprocess
import sys

import pytest

from iccplot.cli import main

from conftest import RESULTS_HEADER, SAMPLE_CELLS, write_results_csv


class TestMain:
    def test_default_run_writes_both_figures(self, sample_csv, tmp_path, capsys):
        out = tmp_path / "figs"

        rc = main(["--csv", str(sample_csv), "--out", str(out)])

        assert rc == 0
        assert (out / "ber_mse_T5.png").exists()
        assert (out / "ber_mse_T10.png").exists()
        stdout = capsys.readouterr().out
        assert stdout.count("wrote ") == 2
        assert "ber_mse_T5.png" in stdout

    def test_scheme_and_t_filters(self, sample_csv, tmp_path, capsys):
        out = tmp_path / "figs"

        rc = main([
            "--csv", str(sample_csv),
            "--out", str(out),
            "--schemes", "DPC",
            "--t-slots", "5",
        ])

        assert rc == 0
        assert (out / "ber_mse_T5.png").exists()
        assert not (out / "ber_mse_T10.png").exists()

    def test_svg_format_flag(self, sample_csv, tmp_path):
        out = tmp_path / "figs"

        rc = main(["--csv", str(sample_csv), "--out", str(out),
                   "--t-slots", "10", "--formats", "png,svg"])

        assert rc == 0
        assert (out / "ber_mse_T10.png").exists()
        assert (out / "ber_mse_T10.svg").exists()

    def test_missing_column_exits_1_naming_it(self, tmp_path, capsys):
        bad = write_results_csv(
            tmp_path / "bad.csv",
            SAMPLE_CELLS[:2],
            header=RESULTS_HEADER.replace("mse", "mean_sq"),
        )

        rc = main(["--csv", str(bad), "--out", str(tmp_path / "figs")])

        assert rc == 1
        err = capsys.readouterr().err
        assert err.startswith("plot: error:")
        assert "mse" in err

    def test_empty_selection_exits_1(self, sample_csv, tmp_path, capsys):
        rc = main(["--csv", str(sample_csv), "--out", str(tmp_path / "figs"),
                   "--schemes", "NOPE"])

        assert rc == 1
        err = capsys.readouterr().err
        assert "plot: error:" in err
        assert "empty selection" in err

    def test_missing_file_exits_1(self, tmp_path, capsys):
        rc = main(["--csv", str(tmp_path / "absent.csv"),
                   "--out", str(tmp_path / "figs")])

        assert rc == 1
        assert "plot: error:" in capsys.readouterr().err

    def test_non_integer_t_slots_exits_1(self, sample_csv, tmp_path, capsys):
        rc = main(["--csv", str(sample_csv), "--out", str(tmp_path / "figs"),
                   "--t-slots", "five"])

        assert rc == 1
        assert "t-slots" in capsys.readouterr().err

    def test_unsupported_format_exits_1(self, sample_csv, tmp_path, capsys):
        rc = main(["--csv", str(sample_csv), "--out", str(tmp_path / "figs"),
                   "--formats", "gif"])

        assert rc == 1
        assert "gif" in capsys.readouterr().err

    @pytest.mark.parametrize("flags", [[], ["--csv", "x.csv"], ["--out", "figs"]])
    def test_required_flags_enforced_by_argparse(self, flags):
        with pytest.raises(SystemExit) as excinfo:
            main(flags)

        assert excinfo.value.code == 2


def test_module_entry_point_runs(sample_csv, tmp_path):
    out = tmp_path / "figs"

    proc = subprocess.run(
        [sys.executable, "-m", "iccplot",
         "--csv", str(sample_csv), "--out", str(out), "--t-slots", "5"],
        capture_output=True,
        text=True,
    )

    assert proc.returncode == 0, proc.stderr
    assert (out / "ber_mse_T5.png").exists()
