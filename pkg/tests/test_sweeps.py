"""Sweep runner and CLI tests: determinism, round trips, exit codes."""

import math

import numpy as np
import pytest

from ccrlab import cli, sweeps
from ccrlab.sweeps import (
    EXIT_IDENTITY_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE,
    DefectRecord,
    SweepConfig,
    UsageError,
    parse_records_csv,
    parse_records_json,
    records_to_csv,
    records_to_json,
    report,
    run_sweep,
)

FAST_SPIN = dict(experiment="spin", p_list=(10, 100), k_list=(0, 1, 2), z_list=(1.0,))


def test_identical_config_gives_identical_bytes():
    cfg = SweepConfig(**FAST_SPIN, seed=3)
    records_a, status_a = run_sweep(cfg)
    records_b, status_b = run_sweep(cfg)
    assert status_a == status_b == EXIT_OK
    assert records_to_csv(records_a) == records_to_csv(records_b)
    assert records_to_json(records_a) == records_to_json(records_b)


def test_csv_round_trip_is_exact():
    cfg = SweepConfig(**FAST_SPIN, seed=1)
    records, _ = run_sweep(cfg)
    text = records_to_csv(records)
    assert text.splitlines()[0] == "experiment,params,defect,measured,bound,pass"
    parsed = parse_records_csv(text)
    assert records_to_csv(parsed) == text


def test_json_round_trip_is_exact():
    cfg = SweepConfig(**FAST_SPIN, seed=1)
    records, _ = run_sweep(cfg)
    text = records_to_json(records)
    parsed = parse_records_json(text)
    assert records_to_json(parsed) == text


def test_spin_sweep_measures_k_over_j():
    cfg = SweepConfig(
        experiment="spin", p_list=(10, 100, 1000), k_list=(0, 1, 2, 3), z_list=(1.0,)
    )
    records, status = run_sweep(cfg)
    assert status == EXIT_OK
    defects = [r for r in records if r.defect == "ccr-weight-defect"]
    assert len(defects) == 12
    for r in defects:
        expected = r.params["k"] / (r.params["p"] / 2.0)
        assert abs(r.measured - expected) <= 1e-12


def test_clifford_sweep_all_pass():
    cfg = SweepConfig(experiment="clifford", clifford_nu_list=(1, 2, 3, 4, 5, 6))
    records, status = run_sweep(cfg)
    assert status == EXIT_OK
    assert all(r.passed for r in records)
    anticomm = [r for r in records if r.defect == "gamma-anticommutation"]
    assert len(anticomm) == 6
    assert all(r.measured <= 1e-10 for r in anticomm)


def test_empty_grid_is_a_usage_error():
    with pytest.raises(UsageError):
        SweepConfig(experiment="spin", p_list=()).validate()
    with pytest.raises(UsageError):
        SweepConfig(experiment="bogus").validate()
    with pytest.raises(UsageError):
        SweepConfig(fmt="yaml").validate()


def test_resource_refusal_records_skip_and_exit_code():
    cfg = SweepConfig(
        experiment="parafermi", parafermi_orders=(2, 16), mode_list=(2,), site_cap=16
    )
    records, status = run_sweep(cfg)
    assert status == EXIT_RESOURCE
    skipped = [r for r in records if r.skip_reason]
    assert len(skipped) == 1
    assert "32 sites" in skipped[0].skip_reason
    assert math.isnan(skipped[0].measured)
    # skip records survive the CSV round trip
    text = records_to_csv(records)
    parsed = parse_records_csv(text)
    assert records_to_csv(parsed) == text
    assert any(r.skip_reason for r in parsed)


def test_identity_failure_sets_exit_code(monkeypatch):
    def broken_battery(cfg, rng):
        return [
            DefectRecord("weyl", {"nu": 4}, "weyl-relation", 1.0, 1e-12, False)
        ]

    monkeypatch.setitem(sweeps._BATTERIES, "weyl", broken_battery)
    records, status = run_sweep(SweepConfig(experiment="weyl"))
    assert status == EXIT_IDENTITY_FAILURE
    assert not records[0].passed
    assert "FAIL" in report(records)


def test_report_contents():
    cfg = SweepConfig(
        experiment="spin", p_list=(10, 100, 1000), k_list=(0, 1, 2, 3), z_list=(1.0,)
    )
    records, _ = run_sweep(cfg)
    text = report(records)
    assert "== spin" in text
    assert "ccr-weight-exactness" in text
    # the defect equals 2k/p, so each fixed-k series has log-log slope -1
    line = next(ln for ln in text.splitlines() if "ccr-weight-defect" in ln)
    slope = float(line.split("slope")[1].split("(")[0])
    assert abs(slope + 1.0) <= 0.01
    assert "rotation covariance" in text  # convention note
    assert "sqrt(k!)" in text  # convention note


def test_report_single_point_slope_na():
    records = [
        DefectRecord("spin", {"p": 10, "k": 1}, "ccr-weight-defect", 0.2, None, True)
    ]
    assert "slope n/a" in report(records)


def test_report_requires_records():
    with pytest.raises(UsageError):
        report([])


# ---------------------------------------------------------------------------
# CLI


def test_cli_run_and_report(tmp_path, capsys):
    out = tmp_path / "records.csv"
    code = cli.main(
        [
            "run", "--experiment", "clifford", "--out", str(out), "--seed", "5",
            "--config", str(_write_config(tmp_path, "clifford_nu_list = 1, 2, 3")),
        ]
    )
    assert code == 0
    assert out.exists()
    text = out.read_text()
    assert text.startswith("experiment,params,defect,measured,bound,pass")
    code = cli.main(["report", "--in", str(out)])
    assert code == 0
    rendered = capsys.readouterr().out
    assert "== clifford" in rendered
    assert "gamma-anticommutation" in rendered


def test_cli_json_output(tmp_path, capsys):
    out = tmp_path / "records.json"
    code = cli.main(
        ["run", "--experiment", "clifford", "--format", "json", "--out", str(out),
         "--config", str(_write_config(tmp_path, "clifford_nu_list = 1, 2"))]
    )
    assert code == 0
    parsed = parse_records_json(out.read_text())
    assert parsed and all(r.experiment == "clifford" for r in parsed)
    assert cli.main(["report", "--in", str(out)]) == 0
    assert "gamma-square" in capsys.readouterr().out


def test_cli_determinism_bytes(tmp_path):
    config = _write_config(tmp_path, "p_list = 10, 100\nk_list = 0, 1\nz_list = 1.0")
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        assert cli.main(
            ["run", "--experiment", "spin", "--config", str(config),
             "--out", str(out), "--seed", "7"]
        ) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_flag_overrides_config_file(tmp_path):
    config = _write_config(
        tmp_path, "experiment = weyl\nnu_list = 4\nseed = 1\nout = ignored.csv"
    )
    out = tmp_path / "wins.csv"
    code = cli.main(
        ["run", "--experiment", "clifford", "--config", str(config), "--out", str(out)]
    )
    assert code == 0
    parsed = parse_records_csv(out.read_text())
    assert all(r.experiment == "clifford" for r in parsed)
    assert not (tmp_path / "ignored.csv").exists()


def test_cli_usage_errors(tmp_path):
    # empty grid from a config file: exit 2, no output file written
    config = _write_config(tmp_path, "p_list =")
    out = tmp_path / "never.csv"
    code = cli.main(
        ["run", "--experiment", "spin", "--config", str(config), "--out", str(out)]
    )
    assert code == 2
    assert not out.exists()
    assert cli.main(["run", "--experiment", "nonsense"]) == 2
    assert cli.main(["report", "--in", str(tmp_path / "missing.csv")]) == 2
    config = _write_config(tmp_path, "unknown_key = 3")
    assert cli.main(["run", "--experiment", "spin", "--config", str(config)]) == 2


def test_cli_resource_exit_code(tmp_path):
    config = _write_config(
        tmp_path, "parafermi_orders = 2, 16\nmode_list = 2\nsite_cap = 16"
    )
    out = tmp_path / "skips.csv"
    code = cli.main(
        ["run", "--experiment", "parafermi", "--config", str(config), "--out", str(out)]
    )
    assert code == 3
    assert "skip:" in out.read_text()


def test_config_file_parsing(tmp_path):
    config = _write_config(
        tmp_path,
        "# comment line\nexperiment = weyl\nnu_list = 4, 16  # inline comment\n"
        "tol_exact = 1e-11\nseed = 9",
    )
    values = cli.parse_config_file(str(config))
    cfg = cli.build_config(values, {})
    assert cfg.experiment == "weyl"
    assert cfg.nu_list == (4, 16)
    assert cfg.tol_exact == 1e-11
    assert cfg.seed == 9
    bad = _write_config(tmp_path, "just a line without equals")
    with pytest.raises(UsageError):
        cli.parse_config_file(str(bad))


def test_number_serialization_round_trips_doubles():
    value = 0.1 + 0.2  # classic non-representable decimal
    text = sweeps._fmt_number(value)
    assert float(text) == value


def _write_config(tmp_path, body):
    path = tmp_path / f"cfg_{abs(hash(body)) % 10**8}.txt"
    path.write_text(body + "\n")
    return path
