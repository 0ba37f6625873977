"""Tests for the command-line driver: configuration handling, the five
subcommands, exit codes, and output determinism."""

import json
import subprocess
import sys

import pytest
from mpmath import mp

from xieq.cli import (
    FIGURE_IDS,
    RunConfig,
    SuiteReport,
    _cval,
    _sci,
    _suite_entry_ids,
    cmd_verify,
    main,
)
from xieq.errors import ConfigError
from xieq.integral_eq import identity_ids


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_rows(text):
    return [ln for ln in text.splitlines() if ln and not ln.startswith("#")]


# ---------------------------------------------------------------------------
# configuration objects


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.precision_digits == 60
        assert cfg.tolerance == mp.mpf(10) ** -48
        assert cfg.output_format == "csv"
        assert cfg.output_path is None
        assert cfg.t_grid is None
        assert cfg.sigma_list == ()

    def test_explicit_tolerance_is_coerced(self):
        cfg = RunConfig(tolerance="1e-30")
        assert cfg.tolerance == mp.mpf("1e-30")

    @pytest.mark.parametrize("digits", [15, 0, -4])
    def test_low_digits_rejected(self, digits):
        with pytest.raises(ConfigError):
            RunConfig(precision_digits=digits)

    def test_bad_format_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(output_format="yaml")

    @pytest.mark.parametrize("tol", ["0", "-1e-10"])
    def test_nonpositive_tolerance_rejected(self, tol):
        with pytest.raises(ConfigError):
            RunConfig(tolerance=tol)

    def test_inverted_grid_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(t_grid=(50, 10, 1))

    def test_nonpositive_step_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(t_grid=(10, 50, 0))

    def test_grid_and_sigma_coerced_to_mpf(self):
        cfg = RunConfig(t_grid=("10", "50", "0.5"), sigma_list=("0.3", "0.7"))
        assert all(isinstance(x, mp.mpf) for x in cfg.t_grid)
        assert cfg.sigma_list == (mp.mpf("0.3"), mp.mpf("0.7"))

    def test_frozen(self):
        cfg = RunConfig()
        with pytest.raises(Exception):
            cfg.precision_digits = 80


class TestSuiteReport:
    def test_count_invariant_enforced(self):
        with pytest.raises(ConfigError):
            SuiteReport(reports=(), passed_count=1, failed_count=0, wall_time_seconds=0.0)


class TestValueFormatting:
    def test_always_scientific(self):
        s = _sci(mp.mpf(2), 19)
        assert "e" in s
        assert mp.mpf(s) == 2

    def test_roundtrip_small(self):
        s = _sci(mp.mpf("3.384e-15"), 17)
        assert abs(mp.mpf(s) - mp.mpf("3.384e-15")) < mp.mpf("1e-25")

    def test_nan_and_inf(self):
        assert _sci(mp.nan, 10) == "nan"
        assert _sci(mp.inf, 10) == "inf"
        assert _sci(-mp.inf, 10) == "-inf"

    def test_complex_cell_has_no_comma(self):
        cell = _cval(mp.mpc(1.5, -2.25), 10)
        assert "," not in cell
        assert cell.endswith("i")
        assert "-" in cell

    def test_real_mpc_prints_as_real(self):
        assert "i" not in _cval(mp.mpc(3, 0), 10)


# ---------------------------------------------------------------------------
# verify


class TestVerify:
    def test_registry_is_identities_plus_moment_checks(self):
        entries = _suite_entry_ids()
        assert set(identity_ids()) <= set(entries)
        assert {"eqrhom1", "eqrhom2", "eqrhom3"} <= set(entries)
        assert {"theta-line-high", "theta-line-shifted"} <= set(entries)
        assert len(entries) == len(identity_ids()) + 5
        assert list(entries) == sorted(entries)

    def test_filter_matches_exactly_three(self, capsys):
        code, out, err = run_cli(
            ["verify", "--digits", "16", "--filter", "eqrhom*"], capsys
        )
        assert code == 0
        rows = data_rows(out)
        assert len(rows) == 3
        assert [r.split(",")[0] for r in rows] == ["eqrhom1", "eqrhom2", "eqrhom3"]
        assert all(r.endswith(",true") for r in rows)

    def test_filter_single_identity(self, capsys):
        code, out, _ = run_cli(["verify", "--digits", "16", "--filter", "eq00"], capsys)
        assert code == 0
        assert len(data_rows(out)) == 1

    def test_unmatched_filter_is_usage_error(self, capsys):
        code, _, err = run_cli(["verify", "--filter", "nosuchid*"], capsys)
        assert code == 2
        assert "matches no registered identity" in err

    def test_absurd_tolerance_fails_with_exit_one(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--digits", "16", "--filter", "eqrhom*", "--tol", "1e-99"], capsys
        )
        assert code == 1
        assert all(r.endswith(",false") for r in data_rows(out))

    def test_counts_tile_reports(self):
        cfg = RunConfig(precision_digits=16, output_path="/dev/null")
        suite, code = cmd_verify(cfg, filter_glob="eqpr*")
        assert suite.passed_count + suite.failed_count == len(suite.reports)
        assert code == 0
        assert suite.wall_time_seconds > 0

    def test_json_rows_carry_pinned_keys(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--digits", "16", "--filter", "eqrhom1", "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        row = doc["rows"][0]
        assert sorted(row) == [
            "abs_residual",
            "digits",
            "identity_id",
            "lhs",
            "passed",
            "rel_residual",
            "rhs",
        ]
        assert row["identity_id"] == "eqrhom1"
        assert row["passed"] == "true"
        assert isinstance(row["lhs"], str)

    def test_output_bytes_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for target in (a, b):
            code, _, _ = run_cli(
                ["verify", "--digits", "16", "--filter", "eqrhom*", "--out", str(target)],
                capsys,
            )
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_parallel_matches_serial_bytes(self, tmp_path, capsys):
        serial, parallel = tmp_path / "s.csv", tmp_path / "p.csv"
        run_cli(
            ["verify", "--digits", "16", "--filter", "eqrhom*", "--out", str(serial)],
            capsys,
        )
        run_cli(
            [
                "verify",
                "--digits",
                "16",
                "--filter",
                "eqrhom*",
                "--jobs",
                "3",
                "--out",
                str(parallel),
            ],
            capsys,
        )
        assert serial.read_bytes() == parallel.read_bytes()

    def test_wall_time_only_on_stderr(self, capsys):
        _, out, err = run_cli(["verify", "--digits", "16", "--filter", "eqrhom1"], capsys)
        assert "wall_time_seconds=" in err
        assert "wall_time_seconds=" not in "".join(
            ln for ln in out.splitlines() if not ln.startswith("#")
        )


# ---------------------------------------------------------------------------
# eval


class TestEval:
    def test_interior_point_passes(self, capsys):
        code, out, err = run_cli(
            ["eval", "0.3333333333333333", "6", "--digits", "20"], capsys
        )
        assert code == 0
        row = data_rows(out)[0].split(",")
        assert row[3] == "IV"
        assert row[-1] == "true"
        # reconstruction and direct value agree in the printed digits
        assert row[4][:20] == row[5][:20]

    def test_boundary_names_the_line(self, capsys):
        code, _, err = run_cli(["eval", "0.4", "5", "-1.2", "--digits", "16"], capsys)
        assert code == 2
        assert "c = -sigma/2 - 1" in err

    def test_blue_line_named(self, capsys):
        code, _, err = run_cli(["eval", "0.4", "5", "-1.5", "--digits", "16"], capsys)
        assert code == 2
        assert "c = -3/2" in err

    def test_outside_strip_is_usage_error(self, capsys):
        code, _, err = run_cli(["eval", "2", "0"], capsys)
        assert code == 2
        assert "sigma" in err

    def test_no_recoverable_chamber_is_numerical_exit(self, capsys):
        code, _, err = run_cli(["eval", "0.8", "3", "-1.3", "--digits", "16"], capsys)
        assert code == 3

    def test_explicit_tolerance_can_fail_the_gate(self, capsys):
        code, out, _ = run_cli(
            ["eval", "0.3333333333333333", "6", "--digits", "20", "--tol", "1e-99"],
            capsys,
        )
        assert code == 1
        assert data_rows(out)[0].endswith(",false")


# ---------------------------------------------------------------------------
# zeros


class TestZeros:
    def test_first_window_pairs_ten(self, capsys):
        code, out, _ = run_cli(
            ["zeros", "--t-start", "10", "--t-stop", "50", "--digits", "16"], capsys
        )
        assert code == 0
        rows = data_rows(out)
        assert len(rows) == 10
        assert all(r.endswith(",true") for r in rows)
        first = rows[0].split(",")
        assert abs(mp.mpf(first[1]) - mp.mpf("14.134725141734694")) < mp.mpf("1e-6")

    def test_low_window_is_empty(self, capsys):
        code, out, _ = run_cli(
            ["zeros", "--t-start", "0", "--t-stop", "10", "--digits", "16"], capsys
        )
        assert code == 0
        assert data_rows(out) == []

    def test_inverted_range_is_config_error(self, capsys):
        code, _, err = run_cli(["zeros", "--t-start", "50", "--t-stop", "10"], capsys)
        assert code == 2
        assert "increasing" in err

    def test_missing_range_is_config_error(self, capsys):
        code, _, err = run_cli(["zeros"], capsys)
        assert code == 2
        assert "--t-start" in err

    def test_desk_scale_cap(self, capsys):
        code, _, err = run_cli(["zeros", "--t-start", "10", "--t-stop", "3000"], capsys)
        assert code == 2
        assert "2500" in err

    def test_summary_headers_present(self, capsys):
        _, out, _ = run_cli(
            ["zeros", "--t-start", "10", "--t-stop", "25", "--digits", "16"], capsys
        )
        assert any(ln.startswith("# summary: predictions=") for ln in out.splitlines())
        assert any(ln.startswith("# summary: max_offset=") for ln in out.splitlines())


# ---------------------------------------------------------------------------
# moments


class TestMoments:
    def test_fourteen_rows_all_pass(self, capsys):
        code, out, _ = run_cli(["moments", "--digits", "30"], capsys)
        assert code == 0
        rows = data_rows(out)
        assert len(rows) == 14
        ids = [r.split(",")[0] for r in rows]
        assert ids[:7] == [f"lattice-sum-{k}" for k in range(1, 8)]
        assert ids[7:] == [f"axis-moment-{k}" for k in range(1, 8)]
        assert all(r.endswith(",true") for r in rows)

    def test_digit_stability_30_vs_60(self, capsys):
        _, out30, _ = run_cli(["moments", "--digits", "30"], capsys)
        _, out60, _ = run_cli(["moments", "--digits", "60"], capsys)
        closed30 = [r.split(",")[1] for r in data_rows(out30)]
        closed60 = [r.split(",")[1] for r in data_rows(out60)]
        for a, b in zip(closed30, closed60):
            mant_a, exp_a = a.split("e")
            mant_b, exp_b = b.split("e")
            assert exp_a == exp_b
            digits_a = mant_a.replace(".", "").replace("-", "")[:25]
            digits_b = mant_b.replace(".", "").replace("-", "")[:25]
            assert digits_a == digits_b

    def test_json_document_is_schema_shaped(self, capsys):
        code, out, _ = run_cli(["moments", "--digits", "30", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"kind", "config", "notes", "columns", "rows"}
        assert len(doc["rows"]) == 14
        assert all(set(r) == set(doc["columns"]) for r in doc["rows"])


# ---------------------------------------------------------------------------
# figures


class TestFigure:
    def test_unknown_id_is_usage_error(self, capsys):
        code, _, err = run_cli(["figure", "NoSuchFigure"], capsys)
        assert code == 2
        assert "unknown figure" in err
        assert "J1J2" in err  # the message lists the known ids

    def test_all_ids_registered(self):
        from xieq.cli import _FIGURES

        assert set(FIGURE_IDS) == set(_FIGURES)
        assert len(FIGURE_IDS) == 21

    def test_csv_headers_are_self_describing(self, capsys):
        code, out, _ = run_cli(["figure", "MsOver"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# figure: MsOver"
        assert any(ln.startswith("# config:") for ln in lines)
        assert any(ln.startswith("# scaling:") for ln in lines)
        assert any(ln.startswith("# columns:") for ln in lines)

    def test_multiplier_overviews_are_fast_pure_rationals(self, capsys):
        code, out, _ = run_cli(["figure", "McOver"], capsys)
        assert code == 0
        rows = data_rows(out)
        assert len(rows) > 500
        # the even multiplier sits near 2 inside the window
        mid = rows[len(rows) // 2].split(",")
        assert abs(mp.mpf(mid[1]) - 2) < mp.mpf("0.5")

    def test_cosphi_columns_pinned(self, capsys):
        code, out, _ = run_cli(
            ["figure", "CosPhi", "--t-start", "895", "--t-stop", "896"], capsys
        )
        assert code == 0
        cols = next(ln for ln in out.splitlines() if ln.startswith("# columns:"))
        assert cols == "# columns: t,cosPhi,nearest_zero"
        row = data_rows(out)[0].split(",")
        assert abs(mp.mpf(row[1])) <= 1

    def test_zdiff_columns_and_marker(self, capsys):
        code, out, _ = run_cli(
            ["figure", "Zdiff", "--t-start", "13", "--t-stop", "15"], capsys
        )
        assert code == 0
        cols = next(ln for ln in out.splitlines() if ln.startswith("# columns:"))
        assert cols == "# columns: t,ratio,is_zero_marker"
        markers = {r.split(",")[2] for r in data_rows(out)}
        assert markers <= {"0", "1"}
        assert "1" in markers  # the first zero ordinate sits inside [13, 15]

    def test_sigma_override_recorded_in_header(self, capsys):
        code, out, _ = run_cli(
            [
                "figure",
                "ZRZI",
                "--sigma",
                "0.6",
                "--t-start",
                "500",
                "--t-stop",
                "501",
            ],
            capsys,
        )
        assert code == 0
        assert any("sigma=6.0" in ln for ln in out.splitlines() if ln.startswith("#"))

    def test_figure_bytes_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["figure", "P1234", "--out"]
        run_cli(args + [str(a)], capsys)
        run_cli(args + [str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()

    def test_json_figure_with_typed_rows(self, capsys):
        code, out, _ = run_cli(
            ["figure", "MsOver", "--format", "json", "--t-start", "10", "--t-stop", "10.1"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["columns"] == ["v", "multiplier_imag"]
        assert all(set(r) == {"v", "multiplier_imag"} for r in doc["rows"])

    def test_step_without_range_is_config_error(self, capsys):
        code, _, err = run_cli(["figure", "MsOver", "--t-step", "0.5"], capsys)
        assert code == 2
        assert "--t-step" in err


# ---------------------------------------------------------------------------
# console entry point


class TestConsoleScript:
    def test_help_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "xieq.cli", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        for sub in ("verify", "eval", "figure", "zeros", "moments"):
            assert sub in proc.stdout

    def test_installed_script_matches_module(self):
        proc = subprocess.run(
            ["xieq", "verify", "--digits", "16", "--filter", "eqrhom1"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "eqrhom1" in proc.stdout
