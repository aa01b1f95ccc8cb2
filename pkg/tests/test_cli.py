import json
import math

import pytest

from udw_msc.cli import initial_state, main
from udw_msc.sweep import msc_point
from udw_msc.udw_state import delta_of_state

INV_SQRT3 = 0.577350269189625765


def parse_kv(output):
    record = {}
    for line in output.strip().splitlines():
        key, _, value = line.partition(" = ")
        record[key] = float(value)
    return record


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    return header, rows


class TestInitialStates:
    def test_invariants(self):
        assert abs(delta_of_state(initial_state("singlet")) + 3.0) < 1e-12
        assert abs(delta_of_state(initial_state("product00")) - 1.0) < 1e-12
        assert abs(delta_of_state(initial_state("product11")) - 1.0) < 1e-12
        assert abs(delta_of_state(initial_state("mixed"))) < 1e-12
        assert abs(delta_of_state(initial_state("werner:0.5")) + 1.5) < 1e-12

    def test_rejects_unknown_name(self):
        with pytest.raises(ValueError):
            initial_state("thermal")

    def test_rejects_bad_werner_parameter(self):
        with pytest.raises(ValueError):
            initial_state("werner:1.5")


class TestCmdMsc:
    def test_point_query(self, capsys):
        rc = main(["msc", "--delta0", "-1", "--omega", "1", "--temperature", "0.001"])
        assert rc == 0
        record = parse_kv(capsys.readouterr().out)
        assert abs(record["msc"] - INV_SQRT3) < 1e-9
        assert abs(record["optimal_theta"] - math.pi / 3.0) < 1e-9

    def test_high_temperature_point(self, capsys):
        rc = main(["msc", "--delta0", "0", "--omega", "1", "--temperature", "1e6"])
        assert rc == 0
        record = parse_kv(capsys.readouterr().out)
        assert record["msc"] < 1e-10

    def test_json_output_with_numeric(self, capsys):
        rc = main(
            ["msc", "--delta0", "0.5", "--omega", "1", "--temperature", "1", "--numeric", "--json"]
        )
        assert rc == 0
        record = json.loads(capsys.readouterr().out)
        assert record["abs_difference"] <= 1e-6
        assert abs(record["msc_numeric"] - record["msc"]) <= 1e-6

    def test_invalid_delta0_exits_2(self, capsys):
        rc = main(["msc", "--delta0", "2", "--omega", "1", "--temperature", "1"])
        assert rc == 2
        assert "[-3, 1]" in capsys.readouterr().err

    def test_help_exits_0(self):
        with pytest.raises(SystemExit) as exc:
            main(["msc", "--help"])
        assert exc.value.code == 0


class TestCmdSweep:
    def test_grid_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = main(
            [
                "sweep",
                "--delta0-range=-3:1:0.5",
                "--t-range",
                "0.1:5:0.1",
                "--omega-list",
                "1",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        text = out.read_text()
        assert text.endswith("\n")
        header, rows = read_csv(out)
        assert header == ["delta0", "omega", "temperature", "gamma", "msc"]
        assert len(rows) == 450
        for row in rows:
            if row[0] == -3.0:
                assert row[4] == 1.0

    def test_round_trip_recompute(self, tmp_path):
        out = tmp_path / "sweep.csv"
        main(
            [
                "sweep",
                "--delta0-range=-1:1:0.5",
                "--t-range",
                "0.5:2:0.5",
                "--omega-list",
                "1,3",
                "--out",
                str(out),
            ]
        )
        _, rows = read_csv(out)
        assert len(rows) == 5 * 2 * 4
        for d0, omega, temp, gamma, msc in rows:
            again = msc_point(d0, omega, temp)
            assert abs(again.msc - msc) <= 1e-9
            assert abs(again.gamma - gamma) <= 1e-9

    def test_parallel_is_byte_identical(self, tmp_path):
        args = ["--delta0-range=-3:1:0.5", "--t-range", "0.1:1:0.1", "--omega-list", "1,5"]
        seq = tmp_path / "seq.csv"
        par = tmp_path / "par.csv"
        assert main(["sweep", *args, "--out", str(seq)]) == 0
        assert main(["sweep", *args, "--out", str(par), "--parallel", "2"]) == 0
        assert seq.read_bytes() == par.read_bytes()

    def test_io_failure_exits_3(self, tmp_path, capsys):
        rc = main(
            [
                "sweep",
                "--delta0-range=0:1:0.5",
                "--t-range",
                "1:2:1",
                "--omega-list",
                "1",
                "--out",
                str(tmp_path / "missing" / "sweep.csv"),
            ]
        )
        assert rc == 3

    def test_bad_range_exits_2(self, capsys):
        rc = main(
            ["sweep", "--delta0-range=0:1", "--t-range", "1:2:1", "--omega-list", "1", "--out", "x"]
        )
        assert rc == 2


class TestCmdEvolve:
    def test_singlet_fixed_point_rows(self, tmp_path):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "evolve",
                "--initial",
                "singlet",
                "--omega",
                "1",
                "--temperature",
                "1",
                "--tmax",
                "2",
                "--dt",
                "0.01",
                "--stride",
                "20",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out)
        assert header == ["tau", "trace", "delta", "min_eig", "dist_to_steady", "msc_numeric"]
        assert len(rows) > 3
        for row in rows:
            assert abs(row[1] - 1.0) <= 1e-10  # trace
            assert abs(row[2] + 3.0) <= 1e-8  # delta
            assert row[4] <= 1e-10  # distance to the stationary state

    def test_delta_column_is_constant(self, tmp_path):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "evolve",
                "--initial",
                "werner:0.4",
                "--omega",
                "1",
                "--temperature",
                "0.8",
                "--tmax",
                "3",
                "--dt",
                "0.005",
                "--stride",
                "50",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        _, rows = read_csv(out)
        deltas = [row[2] for row in rows]
        assert max(deltas) - min(deltas) <= 1e-8
        assert abs(deltas[0] + 1.2) <= 1e-9

    def test_product00_reaches_stationarity(self, tmp_path):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "evolve",
                "--initial",
                "product00",
                "--omega",
                "1",
                "--temperature",
                "1",
                "--tmax",
                "40",
                "--dt",
                "0.01",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        _, rows = read_csv(out)
        assert rows[-1][4] <= 1e-6  # converged to the stationary state
        deltas = [row[2] for row in rows]
        assert max(deltas) - min(deltas) <= 1e-8

    def test_unknown_initial_exits_2(self, capsys):
        rc = main(
            ["evolve", "--initial", "foo", "--omega", "1", "--temperature", "1", "--out", "x.csv"]
        )
        assert rc == 2


class TestCmdFigures:
    def test_fig2_panels(self, tmp_path):
        rc = main(["figures", "--which", "2", "--out-dir", str(tmp_path)])
        assert rc == 0
        names = {p.name for p in tmp_path.iterdir()}
        assert {"fig2_a.csv", "fig2_b.csv", "fig2_c.csv", "metadata.json"} <= names
        meta = json.loads((tmp_path / "metadata.json").read_text())
        assert set(meta) == {"grid", "defaults", "version"}
        # Panel b dips at the analytic threshold temperature.
        _, rows = read_csv(tmp_path / "fig2_b.csv")
        omega1 = [row for row in rows if row[1] == 1.0]
        t_min = min(omega1, key=lambda row: row[4])[2]
        assert abs(t_min - 0.567296328553) <= 0.05

    def test_fig1_row_count(self, tmp_path):
        rc = main(["figures", "--which", "1", "--out-dir", str(tmp_path)])
        assert rc == 0
        _, rows = read_csv(tmp_path / "fig1_a.csv")
        assert len(rows) == 81 * 200

    def test_svg_rendering(self, tmp_path):
        rc = main(["figures", "--which", "2", "--out-dir", str(tmp_path), "--svg"])
        assert rc == 0
        for name in ("fig2_a.svg", "fig2_b.svg", "fig2_c.svg"):
            assert (tmp_path / name).stat().st_size > 0


class TestCmdCheck:
    def test_all_checks_pass(self, capsys):
        rc = main(["check"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "[FAIL]" not in out
        assert out.count("[PASS]") >= 4
