import json
import subprocess
import sys

import pytest

from xfmrlife import fileio
from xfmrlife.cli import main


@pytest.fixture(scope="module")
def case_reports(tmp_path_factory):
    out = tmp_path_factory.mktemp("cases")
    for case in (1, 2, 3):
        assert main(["synth", "--case", str(case), "--seed", "42", "--out", str(out), "-q"]) == 0
        assert main(["run", "--input", str(out / f"case{case}_scenario.csv"), "--out", str(out), "-q"]) == 0
    return out


def rated_sensor(path, hours=8760):
    fileio.write_sensor_csv(path, [110.0] * hours)
    return path


def test_synth_writes_scenario(tmp_path, capsys):
    assert main(["synth", "--case", "1", "--seed", "42", "--out", str(tmp_path)]) == 0
    rows = fileio.read_scenario_csv(tmp_path / "case1_scenario.csv")
    assert len(rows) == 8760
    out = capsys.readouterr().out
    assert "mean ambient" in out and "overload hours  0" in out


def test_synth_case3_differs_from_case2_in_60_hours(tmp_path):
    for case in (2, 3):
        assert main(["synth", "--case", str(case), "--seed", "42", "--out", str(tmp_path), "-q"]) == 0
    c2 = fileio.read_scenario_csv(tmp_path / "case2_scenario.csv")
    c3 = fileio.read_scenario_csv(tmp_path / "case3_scenario.csv")
    assert sum(a.load_ratio_ultimate != b.load_ratio_ultimate for a, b in zip(c2, c3)) == 60


def test_synth_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert main(["synth", "--case", "3", "--seed", "42", "--out", str(tmp_path / sub), "--sensor", "-q"]) == 0
    for name in ("case3_scenario.csv", "case3_sensor.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_run_rated_sensor_full_year(tmp_path):
    path = rated_sensor(tmp_path / "rated_sensor.csv")
    assert main(["run", "--input", str(path), "--out", str(tmp_path), "-q"]) == 0
    report = json.loads((tmp_path / "rated_report.json").read_text())
    assert report["final_estimate_years"] == pytest.approx(21.547945205479452, rel=1e-9)
    assert report["converged"] and report["convergence_step"] == 25
    assert report["samples_processed"] == 8760
    assert len(fileio.read_run_csv(tmp_path / "rated_run.csv")) == 8760


def test_run_case1_default_converges(case_reports):
    report = json.loads((case_reports / "case1_report.json").read_text())
    assert report["final_estimate_years"] > 20
    assert report["converged"] is True
    assert report["convergence_step"] < 8760


def test_run_stop_at_convergence(tmp_path):
    path = rated_sensor(tmp_path / "rated_sensor.csv", 200)
    assert main(["run", "--input", str(path), "--out", str(tmp_path), "--stop-at-convergence", "-q"]) == 0
    assert len(fileio.read_run_csv(tmp_path / "rated_run.csv")) == 25


def test_run_unconverged_report(tmp_path):
    path = rated_sensor(tmp_path / "short_sensor.csv", 10)
    assert main(["run", "--input", str(path), "--out", str(tmp_path), "-q"]) == 0
    report = json.loads((tmp_path / "short_report.json").read_text())
    assert report["convergence_step"] is None and report["converged"] is False


def test_run_empty_input(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("hour,theta_h_c\n")
    out = tmp_path / "out"
    assert main(["run", "--input", str(path), "--out", str(out), "-q"]) == 1
    assert not out.exists()


def test_run_reports_identical_modulo_timestamp(tmp_path):
    path = rated_sensor(tmp_path / "x_sensor.csv", 300)
    for sub in ("a", "b"):
        assert main(["run", "--input", str(path), "--out", str(tmp_path / sub), "-q"]) == 0
    a, b = (json.loads((tmp_path / s / "x_report.json").read_text()) for s in ("a", "b"))
    a.pop("generated_at"), b.pop("generated_at")
    assert a == b
    assert (tmp_path / "a" / "x_run.csv").read_bytes() == (tmp_path / "b" / "x_run.csv").read_bytes()


def test_run_resume(tmp_path):
    assert main(["synth", "--case", "2", "--seed", "5", "--out", str(tmp_path), "-q"]) == 0
    full_in = tmp_path / "case2_scenario.csv"
    assert main(["run", "--input", str(full_in), "--out", str(tmp_path / "full"), "-q"]) == 0

    rows = full_in.read_text().splitlines()
    head = tmp_path / "head" / "case2_scenario.csv"
    head.parent.mkdir()
    head.write_text("\n".join(rows[:4001]) + "\n")
    snap = tmp_path / "snap.json"
    assert main(["run", "--input", str(head), "--out", str(tmp_path / "head"), "--snapshot", str(snap), "-q"]) == 0
    assert main(["run", "--input", str(full_in), "--out", str(tmp_path / "tail"), "--resume", str(snap), "-q"]) == 0

    full = fileio.read_run_csv(tmp_path / "full" / "case2_run.csv")
    stitched = fileio.read_run_csv(tmp_path / "head" / "case2_run.csv") + fileio.read_run_csv(tmp_path / "tail" / "case2_run.csv")
    assert stitched == full


def test_run_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time,temp\n0,1\n")
    assert main(["run", "--input", str(path), "--out", str(tmp_path), "-q"]) == 1


def test_run_missing_input_is_io_error(tmp_path):
    assert main(["run", "--input", str(tmp_path / "missing.csv"), "--out", str(tmp_path), "-q"]) == 2


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"estimator": {"tolerence": 1e-5}}))
    assert main(["synth", "--case", "1", "--config", str(cfg), "--out", str(tmp_path)]) == 1
    assert "estimator.tolerence" in capsys.readouterr().err


def test_argparse_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["synth", "--case", "9"])
    assert exc.value.code == 1


def test_compare_ordering(case_reports, tmp_path, capsys):
    reports = [str(case_reports / f"case{c}_report.json") for c in (1, 2, 3)]
    assert main(["compare", *reports, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "ordering holds" in out
    lines = (tmp_path / "comparison.csv").read_text().splitlines()
    assert lines[0] == "case,convergence_step,lifetime_years"
    years = [float(line.split(",")[2]) for line in lines[1:]]
    assert years[0] > years[1] > years[2]


def test_compare_detects_violation(case_reports, tmp_path):
    reports = [str(case_reports / f"case{c}_report.json") for c in (3, 1)]
    assert main(["compare", *reports, "--out", str(tmp_path)]) == 0
    swapped = json.loads((case_reports / "case3_report.json").read_text())
    swapped["case"] = "mild"
    bogus = tmp_path / "bogus.json"
    bogus.write_text(json.dumps(swapped))
    assert main(["compare", str(bogus), str(case_reports / "case2_report.json"), "--out", str(tmp_path)]) == 1


def test_compare_same_report_twice(case_reports, tmp_path):
    r = str(case_reports / "case2_report.json")
    assert main(["compare", r, r, "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "comparison.csv").read_text().splitlines()
    assert lines[1] == lines[2]


def test_compare_needs_two(case_reports, tmp_path):
    assert main(["compare", str(case_reports / "case1_report.json"), "--out", str(tmp_path)]) == 1


def test_compare_unreadable(tmp_path, capsys):
    assert main(["compare", str(tmp_path / "a.json"), str(tmp_path / "b.json"), "--out", str(tmp_path)]) == 2
    assert "a.json" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "xfmrlife", "synth", "--case", "1", "--horizon", "48", "--out", str(tmp_path), "-q"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    assert len(fileio.read_scenario_csv(tmp_path / "case1_scenario.csv")) == 48
