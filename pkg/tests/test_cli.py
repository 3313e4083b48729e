import csv
import json
import math

import numpy as np
import pytest

from qcorr import cli
from qcorr.verify import VerifyResult


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMeasures:
    def test_inline_pure_state(self, capsys):
        code, out, _ = run_cli(
            capsys, "measures", "--inline", '{"family": "pure", "params": {"n": 0.6}}'
        )
        assert code == 0
        record = json.loads(out)
        assert record["mmc"] == pytest.approx(0.6, abs=1e-12)
        assert record["negativity"] == pytest.approx(0.6, abs=1e-12)
        assert record["d1"] == pytest.approx(0.6, abs=1e-12)
        assert record["correlation_distance"] == pytest.approx(0.78, abs=1e-12)

    def test_raw_identity_all_zero(self, capsys):
        record = {
            "family": "raw",
            "params": {"re": (np.eye(4) / 4).tolist(), "im": np.zeros((4, 4)).tolist()},
        }
        code, out, _ = run_cli(capsys, "measures", "--inline", json.dumps(record))
        assert code == 0
        report = json.loads(out)
        for key in ("mmc", "correlation_distance", "negativity"):
            assert report[key] == 0.0
        assert abs(report["d1"]) <= 1e-9

    def test_spec_file(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        path.write_text('{"family": "rho_d", "params": {"w": 0.1, "s": 0.2}}')
        code, out, _ = run_cli(capsys, "measures", "--spec", str(path))
        assert code == 0
        assert json.loads(out)["d1"] == pytest.approx(0.48, abs=1e-12)

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "measures", "--inline", "{not json")
        assert code == 2
        assert "error" in err

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "measures", "--spec", "/nonexistent/state.json")
        assert code == 2

    def test_unknown_family_exit_2(self, capsys):
        code, _, _ = run_cli(
            capsys, "measures", "--inline", '{"family": "ghz", "params": {}}'
        )
        assert code == 2

    def test_invalid_state_exit_3(self, capsys):
        code, _, err = run_cli(
            capsys,
            "measures",
            "--inline",
            '{"family": "bell_diagonal", "params": {"c": [0.9, -0.5, 0.3]}}',
        )
        assert code == 3
        assert "tetrahedron" in err

    def test_requires_exactly_one_source(self, capsys):
        code, _, _ = run_cli(capsys, "measures")
        assert code == 2

    def test_deterministic_output(self, capsys):
        args = ("measures", "--inline", '{"family": "rho_theta", "params": {"theta": 0.7}}')
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second


class TestSweep:
    def _read(self, path):
        with open(path, newline="") as fh:
            return list(csv.DictReader(fh))

    def test_rho_theta_d1_column(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        record = {"family": "rho_theta", "param": "theta", "start": 0.1, "stop": 1.4, "steps": 14}
        code, _, _ = run_cli(
            capsys, "sweep", "--inline", json.dumps(record), "--out", str(out)
        )
        assert code == 0
        rows = self._read(out)
        assert len(rows) == 14
        values = [float(r["value"]) for r in rows]
        assert values == sorted(values)
        for row in rows:
            theta = float(row["value"])
            assert float(row["d1"]) == pytest.approx(0.5 * math.sin(2 * theta), abs=1e-10)
            assert row["error"] == ""

    def test_pure_family_negativity_equals_d1(self, capsys, tmp_path):
        out = tmp_path / "pure.csv"
        record = {"family": "pure", "param": "n", "start": 0.0, "stop": 1.0, "steps": 11}
        code, _, _ = run_cli(capsys, "sweep", "--inline", json.dumps(record), "--out", str(out))
        assert code == 0
        for row in self._read(out):
            assert float(row["negativity"]) == pytest.approx(float(row["d1"]), abs=1e-9)

    def test_rho_d_quarter_w_zero_d1(self, capsys, tmp_path):
        out = tmp_path / "rho_d.csv"
        record = {
            "family": "rho_d",
            "param": "s",
            "start": 0.05,
            "stop": 0.25,
            "steps": 5,
            "fixed": {"w": 0.25},
        }
        code, _, _ = run_cli(capsys, "sweep", "--inline", json.dumps(record), "--out", str(out))
        assert code == 0
        for row in self._read(out):
            assert float(row["d1"]) == 0.0

    def test_invalid_rows_marked_and_sweep_continues(self, capsys, tmp_path):
        out = tmp_path / "partial.csv"
        # s_max(0.1) = 0.2, so the top of this range is invalid
        record = {
            "family": "rho_d",
            "param": "s",
            "start": 0.1,
            "stop": 0.3,
            "steps": 5,
            "fixed": {"w": 0.1},
        }
        code, _, _ = run_cli(capsys, "sweep", "--inline", json.dumps(record), "--out", str(out))
        assert code == 0
        rows = self._read(out)
        assert len(rows) == 5
        good = [r for r in rows if r["error"] == ""]
        bad = [r for r in rows if r["error"] != ""]
        assert len(good) == 3 and len(bad) == 2
        for row in bad:
            assert row["mmc"] == ""

    def test_header_and_round_trip_precision(self, capsys, tmp_path):
        out = tmp_path / "header.csv"
        record = {"family": "pure", "param": "n", "start": 0.1, "stop": 0.9, "steps": 3}
        run_cli(capsys, "sweep", "--inline", json.dumps(record), "--out", str(out))
        with open(out, newline="") as fh:
            header = fh.readline().strip()
        assert header == "value,mmc,correlation_distance,negativity,d1,t1,t2,t3,error"
        for row in self._read(out):
            n = float(row["value"])
            # CSV fields reproduce the internal values exactly
            assert float(row["mmc"]) == n

    def test_stdout_when_no_out(self, capsys):
        record = {"family": "pure", "param": "n", "start": 0.1, "stop": 0.5, "steps": 2}
        code, out, _ = run_cli(capsys, "sweep", "--inline", json.dumps(record))
        assert code == 0
        assert out.startswith("value,")

    def test_bad_sweep_record_exit_2(self, capsys):
        record = {"family": "pure", "param": "w", "start": 0.1, "stop": 0.5, "steps": 3}
        code, _, _ = run_cli(capsys, "sweep", "--inline", json.dumps(record))
        assert code == 2


class TestVerify:
    def test_filtered_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--filter", "pure")
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
        assert lines and all(l.startswith("PASS") for l in lines)
        assert all(l.split()[1].startswith("pure") for l in lines)

    def test_spot_filter_runs_subset(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--filter", "rho_d.spot")
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("PASS")]
        assert len(lines) == 2

    def test_failure_exit_4(self, capsys, monkeypatch):
        broken = [VerifyResult("fabricated.check", 1.0, 0.0, 1e-12)]
        monkeypatch.setattr(cli, "run_checks", lambda prefix=None, cfg=None: broken)
        code, out, _ = run_cli(capsys, "verify")
        assert code == 4
        assert "FAIL fabricated.check" in out

    def test_grid_flag_parsing(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--filter", "rho_d.spot", "--grid", "32x64")
        assert code == 0

    def test_bad_grid_flag(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["verify", "--grid", "nonsense"])
        assert err.value.code == 2

    def test_undersized_grid_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--filter", "rho_d.spot", "--grid", "8x8")
        assert code == 2
