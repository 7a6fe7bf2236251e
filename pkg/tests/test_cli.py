import json
import os
import subprocess
import sys

import pytest

from qslkit.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRatio:
    def test_csv_single_row(self, capsys):
        code, out, _ = invoke(capsys, "ratio", "--gamma0", "500", "--lambda", "50")
        assert code == 0
        lines = out.strip().split("\n")
        header = lines[0].split(",")
        assert header[:5] == ["gamma0", "delta", "lambda", "tau", "tau_d"]
        assert "ratio" in header and "stationary" in header
        assert len(lines) == 2
        row = dict(zip(header, lines[1].split(",")))
        assert float(row["ratio"]) == pytest.approx(0.47146600298396024, abs=1e-9)
        assert row["stationary"] == "false"

    def test_json_format(self, capsys):
        code, out, _ = invoke(capsys, "ratio", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 1
        assert rows[0]["ratio"] == pytest.approx(1.0, abs=1e-6)

    def test_float_repr_roundtrips(self, capsys):
        # 17 significant digits reproduce the binary double exactly.
        _, out, _ = invoke(capsys, "ratio", "--gamma0", "500")
        header, row = (line.split(",") for line in out.strip().split("\n"))
        ratio_txt = dict(zip(header, row))["ratio"]
        assert float(ratio_txt) == pytest.approx(0.47146600298396024, abs=1e-9)
        assert float(format(float(ratio_txt), ".17g")) == float(ratio_txt)


class TestScan:
    def test_header_and_row_count(self, capsys):
        code, out, _ = invoke(
            capsys, "scan", "--n-gamma0", "5", "--n-delta", "3", "--tau-d", "0.2"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "gamma0,delta,lambda,tau_d,ratio,classification,quad_err"
        assert len(lines) == 1 + 5 * 3
        classes = {line.split(",")[5] for line in lines[1:]}
        assert classes == {"speed_up", "no_speed_up"}

    def test_row_order_gamma0_major(self, capsys):
        _, out, _ = invoke(capsys, "scan", "--n-gamma0", "3", "--n-delta", "2")
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        deltas = [float(r[1]) for r in rows]
        assert deltas == [0.0, 500.0] * 3


class TestBoundary:
    def test_on_resonance_boundary_value(self, capsys):
        code, out, _ = invoke(
            capsys, "boundary", "--n-gamma0", "8", "--n-delta", "1", "--tau-d", "0.2"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "delta,gamma0_boundary,flip_index"
        rows = [line.split(",") for line in lines[1:]]
        on_res = [r for r in rows if float(r[0]) == 0.0]
        assert len(on_res) == 1
        assert float(on_res[0][1]) == pytest.approx(32.2, rel=0.02)


class TestSweepTau:
    def test_header_and_weak_plateau(self, capsys):
        code, out, _ = invoke(
            capsys, "sweep-tau", "--gamma0", "5", "--n-points", "11", "--tau-max", "1.0"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "tau,ratio"
        assert len(lines) == 12
        for line in lines[1:]:
            assert float(line.split(",")[1]) == pytest.approx(1.0, abs=1e-6)


class TestDecayRate:
    def test_header_and_clip_flags(self, capsys):
        code, out, _ = invoke(
            capsys,
            "decay-rate",
            "--gamma0", "500",
            "--t-max", "0.5",
            "--n-points", "501",
            "--clip", "10",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,gamma_over_gamma0,clipped"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        flags = [line.split(",")[2] for line in lines[1:]]
        assert set(flags) <= {"true", "false"}
        assert "true" in flags
        assert max(abs(v) for v in values) <= 10.0


class TestCompareBounds:
    def test_header_and_plateaus(self, capsys):
        code, out, _ = invoke(
            capsys, "compare-bounds", "--n-points", "8", "--tau-d", "0.2"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "gamma0,ratio_trace,ratio_bures"
        first = lines[1].split(",")
        assert float(first[1]) == pytest.approx(1.0, abs=1e-6)
        assert float(first[2]) == pytest.approx(1.0, abs=1e-6)
        last = lines[-1].split(",")
        assert float(last[1]) < 1.0 - 1e-6
        assert float(last[2]) < 1.0 - 1e-6


class TestOracleCheck:
    def test_reports_small_error(self, capsys):
        code, out, _ = invoke(
            capsys, "oracle-check", "--gamma0", "500", "--t-max", "0.2", "--step", "1e-4"
        )
        assert code == 0
        lines = out.strip().split("\n")
        header = lines[0].split(",")
        row = dict(zip(header, lines[1].split(",")))
        assert float(row["max_abs_error"]) < 1e-8

    def test_coarse_step_rejected_with_json_error(self, capsys):
        code, out, err = invoke(capsys, "oracle-check", "--step", "0.5")
        assert code == 1
        assert out == ""
        record = json.loads(err)
        assert record["error"] == "ValueError"
        assert record["subcommand"] == "oracle-check"


class TestConfigFile:
    def test_config_supplies_parameters(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gamma0 = 500\nlam = 50\ndelta = 0  # on resonance\ntau-d = 0.2\n")
        code, out, _ = invoke(capsys, "ratio", "--config", str(cfg))
        row = dict(zip(*(line.split(",") for line in out.strip().split("\n"))))
        assert code == 0
        assert float(row["ratio"]) == pytest.approx(0.47146600298396024, abs=1e-9)

    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gamma0 = 500\n")
        code, out, _ = invoke(capsys, "ratio", "--config", str(cfg), "--gamma0", "5")
        row = dict(zip(*(line.split(",") for line in out.strip().split("\n"))))
        assert code == 0
        assert float(row["gamma0"]) == 5.0
        assert float(row["ratio"]) == pytest.approx(1.0, abs=1e-6)

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("bogus = 1\n")
        code, _, err = invoke(capsys, "ratio", "--config", str(cfg))
        assert code == 1
        assert json.loads(err)["error"] == "ValueError"


class TestOutputFile:
    def test_writes_file(self, capsys, tmp_path):
        path = tmp_path / "out.csv"
        code, out, _ = invoke(capsys, "ratio", "--output", str(path))
        assert code == 0
        assert out == ""
        assert path.read_text().startswith("gamma0,")


class TestDeterminism:
    def run_scan(self, threads):
        env = dict(os.environ, QSLKIT_THREADS=str(threads))
        proc = subprocess.run(
            [sys.executable, "-m", "qslkit.cli", "scan", "--n-gamma0", "6", "--n-delta", "4"],
            capture_output=True,
            env=env,
            check=True,
        )
        return proc.stdout

    def test_thread_count_does_not_change_bytes(self):
        assert self.run_scan(1) == self.run_scan(8)

    def test_repeat_run_byte_identical(self):
        assert self.run_scan(2) == self.run_scan(2)
