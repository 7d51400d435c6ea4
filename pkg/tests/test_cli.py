import json
import math
import subprocess
import sys

import numpy as np
import pytest

from sropo import measure_peaks, nearest_peak
from sropo.trace import read_table_csv
from conftest import GAMMA, ROUND_TRIP, scenario_dict


def write_config(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "sropo", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="module")
def config_path(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    return write_config(tmp, scenario_dict())


class TestRunBasics:
    def test_scales_summary_line(self, config_path, tmp_path):
        result = run_cli("scales", "--config", str(config_path), "--out", str(tmp_path))
        assert result.returncode == 0
        line = result.stdout.strip().splitlines()[-1]
        assert line.startswith("tau0=") and "regime=pass" in line
        payload = json.loads((tmp_path / "scales.json").read_text())
        assert payload["tau0_s"] == pytest.approx(3.3356409519815163e-12, rel=1e-12)
        assert payload["regime"]["ok"] is True
        assert payload["resonance_mode_number"] > 0

    def test_check_regime_pass(self, config_path, tmp_path):
        result = run_cli(
            "check-regime", "--config", str(config_path), "--out", str(tmp_path)
        )
        assert result.returncode == 0
        payload = json.loads((tmp_path / "regime.json").read_text())
        assert payload["ok"] is True
        assert len(payload["checks"]) == 3

    def test_rate_both_methods(self, config_path, tmp_path):
        result = run_cli(
            "rate", "--config", str(config_path), "--out", str(tmp_path),
            "--method", "both",
        )
        assert result.returncode == 0
        payload = json.loads((tmp_path / "rate.json").read_text())
        ratio = payload["kappa_mode_sum_per_s"] / payload["kappa_continuum_per_s"]
        assert ratio == pytest.approx(1.0, rel=0.01)

    def test_g2_compact_peak_heights(self, config_path, tmp_path):
        result = run_cli(
            "g2", "--tier", "compact", "--config", str(config_path),
            "--out", str(tmp_path), "--peaks", "3",
        )
        assert result.returncode == 0
        comments, names, cols = read_table_csv(tmp_path / "g2_compact.csv")
        assert names == ["tau_seconds", "g2_value"]
        tau, values = cols
        peaks = measure_peaks(tau, values, floor=0.02)
        tau0 = 3.3356409519815163e-12
        for j, expected in [(0, 1.0), (1, math.exp(-GAMMA * ROUND_TRIP)),
                            (2, math.exp(-2 * GAMMA * ROUND_TRIP))]:
            peak = nearest_peak(peaks, j * ROUND_TRIP - tau0 / 2)
            assert peak.height == pytest.approx(expected, rel=1e-9)
        assert any("scenario_hash" in c for c in comments)
        assert any("regime" in c for c in comments)

    def test_spectrum_idler_peaks_at_minus_m_fsr(self, config_path, tmp_path):
        result = run_cli(
            "spectrum", "--field", "idler", "--config", str(config_path),
            "--out", str(tmp_path), "--window-modes", "4.5", "--m-max", "30",
        )
        assert result.returncode == 0
        _, _, (detuning, values) = read_table_csv(tmp_path / "spectrum_idler.csv")
        fsr = 2 * math.pi / ROUND_TRIP
        peaks = measure_peaks(detuning, values, floor=0.5)
        spacing = detuning[1] - detuning[0]
        for m in range(-4, 5):
            peak = nearest_peak(peaks, -m * fsr)
            assert abs(peak.center - (-m * fsr)) <= spacing

    def test_g1_emits_complex_columns(self, config_path, tmp_path):
        result = run_cli(
            "g1", "--field", "signal", "--config", str(config_path),
            "--out", str(tmp_path), "--m-max", "5",
        )
        assert result.returncode == 0
        _, names, cols = read_table_csv(tmp_path / "g1_signal.csv")
        assert names == ["tau_seconds", "re_value", "im_value"]
        tau, re, im = cols
        i0 = int(np.argmin(np.abs(tau)))
        assert re[i0] == pytest.approx(1.0, abs=1e-12)

    def test_wavefunction_export(self, config_path, tmp_path):
        result = run_cli(
            "wavefunction", "--config", str(config_path), "--out", str(tmp_path),
            "--modes", "3", "--halfwidth-gammas", "10", "--points-per-mode", "321",
        )
        assert result.returncode == 0
        comments, names, cols = read_table_csv(tmp_path / "wavefunction.csv")
        assert names == ["m", "Omega", "re_psi", "im_psi"]
        m_col, omega, re, im = cols
        assert set(np.unique(m_col)) == {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0}
        assert any("normalization_N" in c for c in comments)

    def test_json_format(self, config_path, tmp_path):
        result = run_cli(
            "g2", "--tier", "compact", "--config", str(config_path),
            "--out", str(tmp_path), "--format", "json", "--peaks", "2",
        )
        assert result.returncode == 0
        payload = json.loads((tmp_path / "g2_compact.json").read_text())
        assert payload["columns"] == ["tau_seconds", "g2_value"]
        assert payload["meta"]["tier"] == "compact"
        assert len(payload["data"]) > 100
        # json mirrors the csv data bit-exactly
        run_cli(
            "g2", "--tier", "compact", "--config", str(config_path),
            "--out", str(tmp_path), "--format", "csv", "--peaks", "2",
        )
        _, _, (tau, values) = read_table_csv(tmp_path / "g2_compact.csv")
        rows = np.array(payload["data"])
        assert np.array_equal(rows[:, 0], tau)
        assert np.array_equal(rows[:, 1], values)

    def test_plot_emits_svg(self, config_path, tmp_path):
        result = run_cli(
            "g2", "--tier", "compact", "--config", str(config_path),
            "--out", str(tmp_path), "--plot", "--peaks", "2",
        )
        assert result.returncode == 0
        svg = (tmp_path / "g2_compact.svg").read_text()
        assert svg.startswith("<svg") and "<polyline" in svg


class TestErrorPaths:
    def test_missing_config_is_config_error(self, tmp_path):
        result = run_cli("scales", "--config", str(tmp_path / "nope.json"))
        assert result.returncode == 1
        assert "error: exit=1" in result.stdout

    def test_invalid_config_is_config_error(self, tmp_path):
        data = scenario_dict()
        data["cavity"]["resonator_length_Lr"] = 0.001
        path = write_config(tmp_path, data)
        result = run_cli("scales", "--config", str(path))
        assert result.returncode == 1
        assert "resonator_length_Lr" in result.stdout

    def test_degenerate_rate_is_numeric_error(self, tmp_path):
        data = scenario_dict(idler_n=1.8)  # tau0 = 0
        path = write_config(tmp_path, data)
        result = run_cli(
            "rate", "--config", str(path), "--out", str(tmp_path), "--method",
            "continuum",
        )
        assert result.returncode == 2
        assert "error: exit=2" in result.stdout

    def test_strict_regime_exit_code(self, tmp_path):
        data = scenario_dict(gamma=0.5 * 2 * math.pi / ROUND_TRIP)  # gamma/fsr = 0.5
        path = write_config(tmp_path, data)
        result = run_cli(
            "scales", "--config", str(path), "--out", str(tmp_path),
            "--strict-regime",
        )
        assert result.returncode == 3
        assert "error: exit=3" in result.stdout
        # without the flag the same scenario runs fine
        result = run_cli("scales", "--config", str(path), "--out", str(tmp_path))
        assert result.returncode == 0

    def test_averaged_without_resolution(self, config_path, tmp_path):
        result = run_cli(
            "g2", "--tier", "averaged", "--config", str(config_path),
            "--out", str(tmp_path),
        )
        assert result.returncode == 1


class TestDeterminismAndRoundTrip:
    def test_csv_round_trip_bit_exact(self, config_path, tmp_path):
        run_cli(
            "spectrum", "--field", "signal", "--config", str(config_path),
            "--out", str(tmp_path), "--window-modes", "2.5", "--m-max", "10",
        )
        path = tmp_path / "spectrum_signal.csv"
        _, _, (axis, values) = read_table_csv(path)
        from sropo.trace import format_float

        text = path.read_text().splitlines()
        rows = [line for line in text if line and not line.startswith("#")][1:]
        for i in (0, len(rows) // 2, len(rows) - 1):
            a_str, v_str = rows[i].split(",")
            assert format_float(axis[i]) == a_str
            assert format_float(values[i]) == v_str

    def test_repeated_runs_byte_identical(self, config_path, tmp_path):
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        for out in (out1, out2):
            for cmd in (
                ["g2", "--tier", "series", "--peaks", "2"],
                ["spectrum", "--field", "idler", "--window-modes", "2.5",
                 "--m-max", "10"],
                ["scales"],
            ):
                result = run_cli(
                    *cmd, "--config", str(config_path), "--out", str(out), "--plot"
                )
                assert result.returncode == 0
        files1 = sorted(p.name for p in out1.iterdir())
        files2 = sorted(p.name for p in out2.iterdir())
        assert files1 == files2
        for name in files1:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
