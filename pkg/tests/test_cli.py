"""CLI contract: flags, exit codes, formats, determinism, round-trips."""

import json
import math

import pytest

from xxzpair import cli

PI = math.pi


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEigen:
    def test_isotropic_report_text(self, capsys):
        code, out, _err = run(
            capsys, "eigen", "--jx", "1", "--jz", "1", "--b0", "1",
            "--theta", "0.5235987755982988")
        assert code == 0
        # gamma_1 / 2pi = -cos(pi/6)
        assert "-0.866025" in out

    def test_json_values(self, capsys):
        code, out, _err = run(
            capsys, "eigen", "--jx", "1000", "--jz", "0", "--b0", "1",
            "--theta", "1.0471975511965976", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        top = next(r for r in rows if r["n"] == 3)
        assert top["concurrence"] == pytest.approx(1.0, abs=1e-2)
        assert top["berry_over_2pi"] == pytest.approx(0.0, abs=1e-2)
        mid = next(r for r in rows if r["n"] == 2)
        assert mid["berry_over_2pi"] == pytest.approx(1.0, abs=1e-2)

    def test_degenerate_input_exits_2(self, capsys):
        code, _out, err = run(capsys, "eigen", "--jx", "0", "--jz", "0", "--b0", "0")
        assert code == 2
        assert "degenerate" in err.lower()

    def test_degenerate_spectrum_strict(self, capsys):
        args = ["eigen", "--jx", "1", "--jz", "1", "--b0", "0", "--theta", "0.5"]
        code, _out, err = run(capsys, *args)
        assert code == 2  # q = 0 counts as degenerate input
        code_plain, _, _ = run(capsys, "eigen", "--jx", "2", "--jz", "1",
                               "--b0", "0", "--theta", "0.5")
        assert code_plain == 0  # merely degenerate spectrum, not strict
        code_strict, _, _ = run(capsys, "eigen", "--jx", "2", "--jz", "1",
                                "--b0", "0", "--theta", "0.5", "--strict")
        assert code_strict == 2

    def test_usage_error(self, capsys):
        code, _out, err = run(capsys, "eigen", "--nonsense", "1")
        assert code == 64
        assert "usage error" in err


class TestSweep:
    def test_xx_preset_endpoints(self, capsys):
        code, out, _err = run(
            capsys, "sweep", "--preset", "xx", "--count", "25",
            "--theta", "1.0471975511965976", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        level1 = [r for r in rows if r["n"] == 1]
        assert level1[0]["berry_over_2pi"] == pytest.approx(-0.5, abs=1e-2)
        assert level1[0]["concurrence"] == pytest.approx(0.0, abs=1e-2)
        assert level1[-1]["berry_over_2pi"] == pytest.approx(-1.0, abs=1e-2)
        assert level1[-1]["concurrence"] == pytest.approx(0.0, abs=1e-2)

    def test_ising_preset_mirror(self, capsys):
        code, out, _err = run(
            capsys, "sweep", "--preset", "ising", "--count", "25",
            "--theta", "1.0471975511965976", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        level3 = [r for r in rows if r["n"] == 3]
        assert level3[0]["berry_over_2pi"] == pytest.approx(0.5, abs=1e-2)
        assert level3[-1]["berry_over_2pi"] == pytest.approx(1.0, abs=1e-2)

    def test_vary_jz_preset_crosses_zero(self, capsys):
        # Strong-exchange scan: level 2 goes +1 -> 0 (at j_z = j_x) -> -1.
        code, out, _err = run(
            capsys, "sweep", "--preset", "xxz-vary-jz", "--count", "4",
            "--lo", "1e-3", "--hi", "1e6",
            "--theta", "1.0471975511965976", "--format", "json")
        assert code == 0
        rows = [r for r in json.loads(out) if r["n"] == 2]
        values = [r["berry_over_2pi"] for r in rows]
        assert values[0] == pytest.approx(1.0, abs=1e-2)
        assert values[2] == pytest.approx(0.0, abs=1e-2)   # j_z = j_x point
        assert values[3] == pytest.approx(-1.0, abs=1e-2)

    def test_csv_header_and_determinism(self, capsys):
        argv = ("sweep", "--preset", "xx", "--count", "5", "--format", "csv")
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2
        header = out1.splitlines()[0]
        assert header == ",".join(cli.OUTPUT_FIELDS)

    def test_json_round_trip(self, capsys):
        _code, out, _ = run(capsys, "sweep", "--preset", "xx", "--count", "3",
                            "--format", "json")
        rows = json.loads(out)
        spec = cli.resolve_sweep_spec(
            cli.build_parser().parse_args(["sweep", "--preset", "xx", "--count", "3"]))
        assert rows == cli.sweep_records(spec)

    def test_custom_needs_axis(self, capsys):
        code, _out, err = run(capsys, "sweep", "--preset", "custom")
        assert code == 64

    def test_grid_validation(self, capsys):
        code, _out, _ = run(capsys, "sweep", "--preset", "xx", "--count", "1")
        assert code == 64
        code, _out, _ = run(capsys, "sweep", "--preset", "xx", "--lo", "-1.0")
        assert code == 64
        code, _out, _ = run(capsys, "sweep", "--preset", "bogus")
        assert code == 64

    def test_theta_list(self, capsys):
        code, out, _ = run(capsys, "sweep", "--preset", "xx", "--count", "3",
                           "--theta", "0.5,1.0", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert {r["theta"] for r in rows} == {0.5, 1.0}


class TestCheck:
    def test_passes_with_json_summary(self, capsys):
        code, out, _ = run(capsys, "check", "--samples", "40", "--seed", "3")
        assert code == 0
        summary = json.loads(out)
        for key in ("max_root_residual", "max_eig_mismatch", "max_berry_mismatch",
                    "max_conc_mismatch", "symmetry_violations"):
            assert key in summary
        assert summary["pass"] is True

    def test_zero_samples_usage_error(self, capsys):
        code, _out, _err = run(capsys, "check", "--samples", "0")
        assert code == 64

    def test_byte_identical_across_runs(self, tmp_path):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        assert cli.main(["check", "--samples", "60", "--seed", "5",
                         "--out", str(out_a)]) == 0
        assert cli.main(["check", "--samples", "60", "--seed", "5",
                         "--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_mutation_exits_1(self, capsys, monkeypatch):
        from xxzpair import observables

        def flipped(sol):
            return -2.0 * math.pi * (sol.a**2 - sol.c**2)

        monkeypatch.setattr(observables, "berry_phase", flipped)
        code, out, err = run(capsys, "check", "--samples", "10", "--seed", "3")
        assert code == 1
        assert json.loads(out)["pass"] is False
        assert "failed" in out


class TestEvolve:
    def test_report_and_reference(self, capsys):
        code, out, _ = run(
            capsys, "evolve", "--jx", "1", "--jz", "1", "--b0", "1",
            "--theta", "1.0471975511965976", "--n", "1",
            "--omega", "1e-3", "--steps", "200000")
        assert code == 0
        assert "fidelity" in out and "geometric phase" in out

    def test_singlet(self, capsys):
        code, out, _ = run(
            capsys, "evolve", "--jx", "1", "--jz", "1", "--b0", "1",
            "--n", "0", "--omega", "0.01")
        assert code == 0
        assert "fidelity           1.000000000" in out

    def test_fast_drive_strict_exit_3(self, capsys):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code, _out, err = run(
                capsys, "evolve", "--jx", "1", "--jz", "1", "--b0", "1",
                "--n", "1", "--omega", "1.0", "--steps", "2000", "--strict")
        assert code == 3
        assert "adiabaticity" in err.lower()

    def test_degenerate_exit_2(self, capsys):
        code, _out, err = run(
            capsys, "evolve", "--jx", "2", "--jz", "1", "--b0", "0",
            "--theta", "0.5", "--n", "1", "--omega", "1e-3", "--steps", "2000")
        assert code == 2


class TestTables:
    def test_default_all_pass(self, capsys):
        code, out, _ = run(capsys, "tables")
        assert code == 0
        assert "21 cells checked, 21 pass, 0 fail, 0 skipped" in out

    def test_equator_skips_deep_ising(self, capsys):
        code, out, _ = run(capsys, "tables", "--theta", str(PI / 2))
        assert code == 0
        assert "0 fail" in out
        assert "3 skipped" in out


class TestConfig:
    def test_config_supplies_defaults_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "point.cfg"
        cfg.write_text("jx = 1.0\njz = 1.0\nb0 = 1.0\n"
                       "theta = 1.0471975511965976  # isotropic point\n")
        code, out, _ = run(capsys, "eigen", "--config", str(cfg),
                           "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert rows[1]["berry_over_2pi"] == pytest.approx(-0.5, abs=1e-12)
        # flag beats the file
        code, out, _ = run(capsys, "eigen", "--config", str(cfg),
                           "--jx", "2.0", "--format", "json")
        rows = json.loads(out)
        assert rows[0]["j_x"] == 2.0

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("jq = 1.0\n")
        code, _out, err = run(capsys, "eigen", "--config", str(cfg))
        assert code == 64

    def test_missing_config_file(self, capsys, tmp_path):
        code, _out, err = run(capsys, "eigen", "--config",
                              str(tmp_path / "absent.cfg"))
        assert code == 74


class TestIO:
    def test_unwritable_out_path(self, capsys, tmp_path):
        target = tmp_path / "no" / "such" / "dir" / "x.csv"
        code, _out, err = run(capsys, "eigen", "--jx", "1", "--out", str(target))
        assert code == 74

    def test_missing_command(self, capsys):
        code, _out, err = run(capsys)
        assert code == 64
