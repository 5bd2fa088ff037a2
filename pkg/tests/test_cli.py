import json
import math
import subprocess
import sys

import pytest

from qgame.cli import main, parse_angle

HP = math.pi / 2


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_angle_tokens(self):
        assert parse_angle("pi") == math.pi
        assert parse_angle("pi/2") == HP
        assert parse_angle("pi/4") == math.pi / 4
        assert parse_angle("0.25") == 0.25

    def test_bad_angle(self):
        with pytest.raises(ValueError, match="invalid angle"):
            parse_angle("tau")


class TestPayoff:
    def test_classical_json(self, capsys):
        code, out, _ = run_cli(capsys, "payoff", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--s1", "0,0", "--s2", "0,0")
        assert code == 0
        row = json.loads(out)
        assert row["payoff_a"] == pytest.approx(2.0)
        assert row["payoff_b"] == pytest.approx(1.0)
        assert row["p_oo"] == pytest.approx(1.0)
        assert row["abs_diff_a"] <= 1e-9

    def test_quantum_point_decimal_angles(self, capsys):
        code, out, _ = run_cli(capsys, "payoff", "--bos", "2,1,0",
                               "--gamma", "1.5707963", "--delta", "1.5707963",
                               "--s1", "0,1.5707963", "--s2", "0,0")
        assert code == 0
        row = json.loads(out)
        assert row["payoff_a"] == pytest.approx(1.0, abs=1e-6)
        assert row["payoff_b"] == pytest.approx(2.0, abs=1e-6)

    def test_quantum_point_pi_tokens(self, capsys):
        code, out, _ = run_cli(capsys, "payoff", "--bos", "2,1,0",
                               "--gamma", "pi/2", "--delta", "pi/2",
                               "--s1", "0,pi/2", "--s2", "0,0")
        row = json.loads(out)
        assert row["payoff_a"] == pytest.approx(1.0, abs=1e-12)
        assert row["payoff_b"] == pytest.approx(2.0, abs=1e-12)

    def test_csv_schema_and_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "payoff", "--bos", "2,1,0", "--gamma", "pi/4",
                               "--delta", "pi/4", "--s1", "0.3,0.2", "--s2", "1.1,0.9",
                               "--format", "csv")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header == ("gamma,delta,theta1,phi1,theta2,phi2,payoff_a,payoff_b,"
                          "p_oo,p_ot,p_to,p_tt")
        tokens = row.split(",")
        assert len(tokens) == 12
        # 15-significant-digit round trip: parse and re-format reproduces the row
        assert [f"{float(t):.15g}" for t in tokens] == tokens

    def test_gamma_out_of_range(self, capsys):
        code, _, err = run_cli(capsys, "payoff", "--bos", "2,1,0", "--gamma", "2.0",
                               "--delta", "0", "--s1", "0,0", "--s2", "0,0")
        assert code == 1
        assert "gamma" in err and "[0, pi/2]" in err

    def test_missing_option(self, capsys):
        code, _, err = run_cli(capsys, "payoff", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--s1", "0,0")
        assert code == 1
        assert "--s2" in err

    def test_matrix_game_has_no_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "payoff",
                               "--matrix", "3,3,0,5,5,0,1,1",
                               "--gamma", "0", "--delta", "0",
                               "--s1", "pi,0", "--s2", "0,0")
        assert code == 0
        row = json.loads(out)
        assert row["payoff_a"] == pytest.approx(5.0)
        assert row["payoff_b"] == pytest.approx(0.0)
        assert "closed_form_a" not in row

    def test_bos_and_matrix_conflict(self, capsys):
        code, _, err = run_cli(capsys, "payoff", "--bos", "2,1,0",
                               "--matrix", "3,3,0,5,5,0,1,1", "--gamma", "0",
                               "--delta", "0", "--s1", "0,0", "--s2", "0,0")
        assert code == 1
        assert "either" in err

    def test_bos_ordering_validated(self, capsys):
        code, _, err = run_cli(capsys, "payoff", "--bos", "1,2,0", "--gamma", "0",
                               "--delta", "0", "--s1", "0,0", "--s2", "0,0")
        assert code == 1
        assert "alpha > beta > sigma" in err

    def test_phi_range_gate(self, capsys):
        argv = ["payoff", "--bos", "2,1,0", "--gamma", "0", "--delta", "0",
                "--s1", "0,3.0", "--s2", "0,0"]
        code, _, err = run_cli(capsys, *argv)
        assert code == 1 and "phi" in err
        code, out, _ = run_cli(capsys, *argv, "--phi-range", "full")
        assert code == 0

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "row.json"
        code, out, _ = run_cli(capsys, "payoff", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--s1", "0,0", "--s2", "0,0",
                               "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["payoff_a"] == pytest.approx(2.0)

    def test_unwritable_out_path(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "payoff", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--s1", "0,0", "--s2", "0,0",
                               "--out", str(tmp_path / "missing" / "row.json"))
        assert code == 1
        assert "error" in err


class TestConfigFile:
    def test_config_supplies_options(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# classical point\n"
            "bos = 2,1,0\n"
            "gamma = 0\n"
            "delta = 0\n"
            "s1 = 0,0\n"
            "s2 = 0,0\n"
        )
        code, out, _ = run_cli(capsys, "payoff", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["payoff_a"] == pytest.approx(2.0)

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("bos = 2,1,0\ngamma = 0\ndelta = 0\ns1 = 0,0\ns2 = 0,0\n")
        code, out, _ = run_cli(capsys, "payoff", "--config", str(cfg),
                               "--s2", "pi,0")
        assert code == 0
        assert json.loads(out)["payoff_a"] == pytest.approx(0.0)

    def test_malformed_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gamma 0\n")
        code, _, err = run_cli(capsys, "payoff", "--config", str(cfg))
        assert code == 1
        assert "key = value" in err


class TestVerify:
    def test_default_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify")
        assert code == 0
        assert "result: PASS" in out
        assert "du_printed_vs_oracle" in out
        assert "rejected by simulation" in out  # the printed-form flag line
        assert "(3, 3) vs simulated (1, 2)" in out

    def test_matrix_not_allowed(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--matrix", "3,3,0,5,5,0,1,1")
        assert code == 1
        assert "--bos" in err


class TestSweep:
    def test_single_point_profile_rows(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--grid", "1,1", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        row = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert float(row["payoff_a"]) == pytest.approx(2.0)
        assert float(row["payoff_b"]) == pytest.approx(1.0)
        assert float(row["theta1"]) == 0.0 and float(row["phi2"]) == 0.0

    def test_summary_rows_in_input_order(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--bos", "2,1,0",
                               "--gamma", "0,pi/4,pi/2", "--delta", "0,pi/4,pi/2",
                               "--grid", "2,1", "--summary", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert [r["gamma"] for r in rows] == [0.0, math.pi / 4, HP]
        assert [r["delta"] for r in rows] == [0.0, math.pi / 4, HP]
        assert rows[0]["equilibria"] == 2
        assert all(r["max_formula_dev"] <= 1e-9 for r in rows)

    def test_payoffs_within_hull(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--bos", "2,1,0",
                               "--gamma", "0,pi/2", "--delta", "pi/4",
                               "--grid", "3,3", "--format", "json")
        assert code == 0
        for row in json.loads(out):
            assert 0.0 - 1e-12 <= row["payoff_a"] <= 2.0 + 1e-12
            assert 0.0 - 1e-12 <= row["payoff_b"] <= 2.0 + 1e-12
            total = row["p_oo"] + row["p_ot"] + row["p_to"] + row["p_tt"]
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_csv_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--bos", "2,1,0", "--gamma", "0.7",
                               "--delta", "0.2", "--grid", "2,2", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 1 + 16  # header + 4x4 profiles
        for line in lines[1:]:
            tokens = line.split(",")
            assert [f"{float(t):.15g}" for t in tokens] == tokens


class TestEquilibria:
    def test_classical_two_pure(self, capsys):
        code, out, err = run_cli(capsys, "equilibria", "--bos", "2,1,0", "--gamma", "0",
                                 "--delta", "0", "--grid", "2,1")
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == 2
        thetas = [(p["theta1"], p["theta2"]) for p in payload["profiles"]]
        assert thetas == [(0.0, 0.0), (math.pi, math.pi)]
        assert "equilibria found: 2" in err

    def test_zero_equilibria_still_succeeds(self, capsys):
        code, out, err = run_cli(capsys, "equilibria",
                                 "--matrix", "1,-1,-1,1,-1,1,1,-1",
                                 "--gamma", "0", "--delta", "0", "--grid", "2,1")
        assert code == 0
        assert json.loads(out)["count"] == 0
        assert "equilibria found: 0" in err

    def test_one_point_grid(self, capsys):
        code, out, _ = run_cli(capsys, "equilibria", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--grid", "1,1")
        payload = json.loads(out)
        assert payload["count"] == 1
        assert payload["profiles"][0]["eps_cert"] == 0.0

    def test_refined_grid_keeps_classical_equilibria(self, capsys):
        code, out, _ = run_cli(capsys, "equilibria", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--grid", "9,1")
        payload = json.loads(out)
        pure = {(p["theta1"], p["theta2"]): p["eps_cert"] for p in payload["profiles"]}
        assert pure[(0.0, 0.0)] <= 1e-9
        assert pure[(math.pi, math.pi)] <= 1e-9

    def test_invalid_grid(self, capsys):
        code, _, err = run_cli(capsys, "equilibria", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--grid", "0,1")
        assert code == 1
        assert "theta_steps" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "equilibria", "--bos", "2,1,0", "--gamma", "0",
                               "--delta", "0", "--grid", "2,1", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "theta1,phi1,theta2,phi2,payoff_a,payoff_b,eps_cert"
        assert len(lines) == 3


class TestEntryPoints:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qgame", "payoff", "--bos", "2,1,0",
             "--gamma", "0", "--delta", "0", "--s1", "0,0", "--s2", "0,0"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["payoff_a"] == pytest.approx(2.0)

    def test_usage_error_exits_one(self, capsys):
        assert main(["payoff", "--format", "yaml"]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
