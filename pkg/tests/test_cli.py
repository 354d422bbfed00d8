import json
import math
import subprocess
import sys

import numpy as np
import pytest

from noonsim import cli
from noonsim.estimation import MeasurementRecord, ScalingFit, SensitivityReport, sample_measurements
from noonsim.lithography import ExposurePattern, measure_fringes
from noonsim.rosetta import RosettaSweep
from noonsim.tables import Table, parse_csv, read_table, to_csv, to_records


def run(tmp_path, *args, name="out.csv"):
    out = tmp_path / name
    code = cli.main([*args, "--out", str(out)])
    return code, out


@pytest.mark.parametrize("text,expected", [
    ("1,2,4,...,1024", [2 ** k for k in range(11)]),
    ("1,2,4,…,32", [1, 2, 4, 8, 16, 32]),
    ("2,4,...,10", [2, 4, 6, 8, 10]),
    ("3,5,9", [3, 5, 9]),
    (" 7 ", [7]),
])
def test_parse_n_list(text, expected):
    assert cli.parse_n_list(text) == expected


@pytest.mark.parametrize("text,token", [
    ("1,x,3", "'x'"), ("1,2,...,7,9", "ellipsis"), ("4,2,1", "increasing"),
    ("1,2,4,...,1000", "1000"), ("0,1,2", "increasing"),
])
def test_parse_n_list_errors(text, token):
    with pytest.raises(cli.UsageError, match=token):
        cli.parse_n_list(text)


def test_scaling_noon_closed_form(tmp_path):
    code, out = run(tmp_path, "scaling", "--protocol", "noon", "--n", "1,2,4,...,1024",
                    "--mode", "closed_form")
    assert code == 0
    t = read_table(out)
    assert t.columns == ["N", "delta_phi", "log10N", "log10dphi"]
    assert abs(t.footer["slope"] + 1.0) < 1e-10
    fit = to_records(t)
    assert isinstance(fit, ScalingFit) and fit.n_values[-1] == 1024


def test_scaling_separable_closed_form(tmp_path):
    code, out = run(tmp_path, "scaling", "--protocol", "separable", "--n", "1,2,4,...,1024")
    assert code == 0
    assert abs(read_table(out).footer["slope"] + 0.5) < 1e-10


def test_scaling_monte_carlo_reproducible(tmp_path):
    args = ["scaling", "--protocol", "noon", "--n", "2,4,...,32", "--mode", "montecarlo",
            "--seed", "7", "--batches", "400", "--shots", "300"]
    code, a = run(tmp_path, *args, name="a.csv")
    _, b = run(tmp_path, *args, name="b.csv")
    assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_table(a).footer["slope"] == pytest.approx(-1.0, abs=0.05)


def test_rosetta_rows_and_eq8(tmp_path):
    code, out = run(tmp_path, "rosetta", "--points", "8", "--verify-eq8")
    assert code == 0
    t = read_table(out)
    assert t.rows.shape == (8, 5)
    assert t.columns == ["phi", "p0_mz", "p0_ramsey_mapped", "p0_hadamard", "max_dev"]
    sweep = to_records(t)
    assert isinstance(sweep, RosettaSweep)
    assert sorted(sweep.eq8_deviations) == list(range(1, 9))
    assert max(sweep.eq8_deviations.values()) < 1e-12


def test_rosetta_64_points(tmp_path):
    code, out = run(tmp_path, "rosetta")
    assert code == 0
    assert read_table(out).column("max_dev").max() < 1e-12


def test_rosetta_contract_violation_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "ROSETTA_MAX_DEV", -1.0)
    code, _ = run(tmp_path, "rosetta", "--points", "8")
    assert code == cli.EXIT_CONTRACT


def test_rosetta_too_few_points(tmp_path):
    code, _ = run(tmp_path, "rosetta", "--points", "4")
    assert code == cli.EXIT_USAGE


def test_litho_header_and_columns(tmp_path):
    svg = tmp_path / "plot.svg"
    code, out = run(tmp_path, "litho", "--n", "2", "--lambda-nm", "400", "--svg", str(svg))
    assert code == 0
    t = read_table(out)
    assert t.meta["feature_size_nm"] == 50
    assert t.meta["fringe_period_nm"] == 100
    assert t.columns == ["x_nm", "deposition_quantum", "deposition_classical"]
    assert svg.read_text().startswith("<svg")
    assert "svg" not in t.config["params"]


def test_litho_classical_columns_identical_for_n1(tmp_path):
    code, out = run(tmp_path, "litho", "--n", "1")
    t = read_table(out)
    np.testing.assert_array_equal(t.column("deposition_quantum"), t.column("deposition_classical"))


def test_litho_measured_period_from_emitted_data(tmp_path):
    code, out = run(tmp_path, "litho", "--n", "4", "--lambda-nm", "800", "--points", "4096")
    quantum, classical = to_records(read_table(out))
    assert isinstance(quantum, ExposurePattern)
    assert abs(measure_fringes(quantum).period - 100.0) <= quantum.grid.spacing


def test_litho_resolution_error_verbatim(tmp_path, capsys):
    code, _ = run(tmp_path, "litho", "--n", "4", "--points", "100")
    assert code == cli.EXIT_USAGE
    err = capsys.readouterr().err
    assert "too coarse" in err and "need spacing <" in err


def test_montecarlo_roundtrip_json(tmp_path):
    code, out = run(tmp_path, "montecarlo", "--protocol", "noon", "--n", "5", "--batches", "300",
                    "--shots", "100", "--seed", "11", name="mc.json")
    assert code == 0
    assert out.read_text().startswith("{")
    rec = to_records(read_table(out))
    assert isinstance(rec, MeasurementRecord)
    direct = sample_measurements("noon", 5, math.pi / 2 / 5, 300, 100, 11)
    assert rec.identical(direct)


def test_montecarlo_roundtrip_csv(tmp_path):
    code, out = run(tmp_path, "montecarlo", "--protocol", "separable", "--n", "3",
                    "--phi", "1.1", "--batches", "50", "--shots", "7", "--seed", "3")
    rec = to_records(read_table(out))
    assert rec.identical(sample_measurements("separable", 3, 1.1, 50, 7, 3))


def test_sensitivity_roundtrip(tmp_path):
    code, out = run(tmp_path, "sensitivity", "--protocol", "noon", "--n", "1,2,7",
                    "--phi", "0.3", "--mode", "numeric_derivative")
    assert code == 0
    reports = to_records(read_table(out))
    assert all(isinstance(r, SensitivityReport) for r in reports)
    assert [r.n for r in reports] == [1, 2, 7]
    assert reports[2].delta_phi == pytest.approx(1 / 7, rel=1e-6)


def test_sensitivity_degenerate_phase_is_usage_error(tmp_path):
    code, _ = run(tmp_path, "sensitivity", "--protocol", "noon", "--n", "2", "--phi", "0",
                  "--mode", "numeric_derivative")
    assert code == cli.EXIT_USAGE


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "scaling", "params": {"protocol": "separable",
                                                                "n": "1,2,4,8"},
                               "format": "json"}))
    code, out = run(tmp_path, "scaling", "--config", str(cfg), name="o.json")
    t = read_table(out)
    assert t.config["params"]["protocol"] == "separable"
    assert t.config["params"]["n"] == [1, 2, 4, 8]
    code, out = run(tmp_path, "scaling", "--config", str(cfg), "--protocol", "noon", name="p.json")
    assert read_table(out).config["params"]["protocol"] == "noon"


@pytest.mark.parametrize("doc", [
    {"command": "scaling", "bogus": 1},
    {"command": "scaling", "params": {"wavelength": 3}},
    {"command": "litho"},
])
def test_config_rejects_unknown(tmp_path, doc):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps(doc))
    code, _ = run(tmp_path, "scaling", "--config", str(cfg))
    assert code == cli.EXIT_USAGE


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("NOON_SEED", "99")
    code, out = run(tmp_path, "montecarlo", "--n", "3", "--batches", "10", "--shots", "5")
    assert read_table(out).config["seed"] == 99
    code, out = run(tmp_path, "montecarlo", "--n", "3", "--batches", "10", "--shots", "5",
                    "--seed", "4")
    assert read_table(out).config["seed"] == 4


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["scaling", "--protocol", "squeezed"])
    assert exc.value.code == 2


def test_usage_error_names_token(tmp_path, capsys):
    code, _ = run(tmp_path, "scaling", "--n", "1,2,three")
    assert code == cli.EXIT_USAGE
    assert "'three'" in capsys.readouterr().err


def test_csv_dialect(tmp_path):
    code, out = run(tmp_path, "scaling", "--n", "1,2,3")
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0].startswith("# ")
    assert any(line.startswith("# footer.slope: ") for line in lines)
    assert "timestamp" not in raw.decode()


def test_float_roundtrip_lossless():
    vals = np.array([[math.pi, 1 / 3, 1e-300, -2.5e17, 0.1 + 0.2]])
    t = Table("x", {"params": {}}, ["a", "b", "c", "d", "e"], vals, meta={"m": 0.1 + 0.2})
    back = parse_csv(to_csv(t))
    assert back.rows.tobytes() == t.rows.tobytes()
    assert back.meta["m"] == 0.1 + 0.2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "noonsim.cli", "rosetta", "--points", "8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("# format:")
