import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

jsonschema = pytest.importorskip("jsonschema")

from schroder_lab.cli import main
from schroder_lab.potentials import closed_form_U
from schroder_lab.report import REPORT_SCHEMA, VerificationReport


def run_cli(*args, env=None):
    proc = subprocess.run(
        [sys.executable, "-m", "schroder_lab.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )
    return proc


# -- report machinery ---------------------------------------------------------


def test_report_json_matches_schema():
    report = VerificationReport()
    report.add("demo", 1.0, 1.0 + 1e-12, 1e-9)
    jsonschema.validate(json.loads(report.to_json()), REPORT_SCHEMA)
    assert report.all_passed


def test_shipped_schema_matches_module_schema():
    from pathlib import Path

    shipped = json.loads(
        (Path(__file__).resolve().parents[1] / "docs" / "verification-report.schema.json").read_text()
    )
    shipped.pop("title", None)
    assert shipped == REPORT_SCHEMA


def test_report_summary_counts():
    report = VerificationReport()
    report.add("ok", 1.0, 1.0, 0.0)
    report.add("bad", 1.0, 2.0, 0.1)
    assert (report.total, report.passed) == (2, 1)
    data = report.to_dict()
    assert data["summary"] == {"total": 2, "passed": 1}
    assert [c["pass"] for c in data["checks"]] == [True, False]


# -- coeffs ---------------------------------------------------------------------


def test_coeffs_first_row_exact(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["coeffs", "--s", "5/2", "--n", "10", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,a_n,a_n_float"
    n, exact, flt = lines[1].split(",")
    assert (n, exact) == ("1", "-4/3")
    assert float(flt) == pytest.approx(-4.0 / 3.0)


def test_coeffs_decimal_s_is_parsed_exactly(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    main(["coeffs", "--s", "5/2", "--n", "6", "--out", str(a)])
    main(["coeffs", "--s", "2.5", "--n", "6", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_coeffs_degenerate_s_exits_nonzero():
    proc = run_cli("coeffs", "--s", "1", "--n", "5")
    assert proc.returncode == 2
    assert "DegenerateParameter" in proc.stderr


def test_coeffs_rows_satisfy_residual_oracle(tmp_path):
    # rebuild the series from the emitted exact strings and substitute it
    # back into the functional equation
    from schroder_lab.series import PowerSeries, u_functional_residual

    out = tmp_path / "c3.csv"
    main(["coeffs", "--s", "3", "--n", "5", "--out", str(out)])
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    coeffs = (Fraction(0), Fraction(0), Fraction(1)) + tuple(Fraction(r[1]) for r in rows)
    series = PowerSeries(Fraction(0), Fraction(3), coeffs, 7)
    assert all(c == 0 for c in u_functional_residual(series))


# -- potential -------------------------------------------------------------------


def test_potential_endpoint_rows_vanish(tmp_path):
    out = tmp_path / "v0.csv"
    main(["potential", "--s", "5/2", "--family", "0", "--index", "0",
          "--samples", "11", "--out", str(out)])
    lines = out.read_text().splitlines()
    assert lines[0] == "x,V"
    first = float(lines[1].split(",")[1])
    last = float(lines[-1].split(",")[1])
    assert abs(first) < 1e-9 and abs(last) < 1e-9


def test_potential_w1_endpoints_s103(tmp_path):
    out = tmp_path / "w1.csv"
    main(["potential", "--s", "10/3", "--family", "1", "--index", "1",
          "--samples", "9", "--out", str(out)])
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert float(rows[0][0]) == pytest.approx(3625 / 4374)
    assert abs(float(rows[0][1])) < 1e-9
    assert abs(float(rows[-1][1])) < 1e-9
    # interior strictly negative
    assert all(float(r[1]) < 0 for r in rows[2:-2])


def test_potential_matches_closed_form_s4(tmp_path):
    out = tmp_path / "v0s4.csv"
    main(["potential", "--s", "4", "--samples", "41", "--out", str(out)])
    for line in out.read_text().splitlines()[1:]:
        x, v = (float(c) for c in line.split(","))
        expected = -math.log(4.0) ** 2 * closed_form_U(x, 4)
        assert abs(v - expected) < 1e-8


def test_potential_complex_branch_reports_error():
    proc = run_cli("potential", "--s", "5/2", "--family", "1", "--index", "1")
    assert proc.returncode == 2
    assert "ComplexValued" in proc.stderr


# -- transit ----------------------------------------------------------------------


def test_transit_depth0_empty_pass(tmp_path):
    out = tmp_path / "t.json"
    main(["transit", "--s", "5/2", "--depth", "0", "--out", str(out)])
    data = json.loads(out.read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["summary"] == {"total": 0, "passed": 0}


def test_transit_s52_four_unit_checks(tmp_path):
    out = tmp_path / "t52.json"
    main(["transit", "--s", "5/2", "--depth", "3", "--n", "200", "--out", str(out)])
    data = json.loads(out.read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["summary"] == {"total": 4, "passed": 4}
    assert all(c["expected"] == 1.0 and c["tolerance"] == 1e-5 for c in data["checks"])


def test_transit_s103_leg_values(tmp_path):
    out = tmp_path / "t103.json"
    main(["transit", "--s", "10/3", "--depth", "3", "--out", str(out)])
    data = json.loads(out.read_text())
    assert data["summary"]["passed"] == data["summary"]["total"]
    legs = {c["check"].split()[1]: c for c in data["checks"] if c["check"].startswith("leg")}
    assert legs["V2"]["expected"] == 0.825728
    assert legs["W1"]["expected"] == 0.174272
    assert legs["W2"]["expected"] == 0.164433
    assert legs["V3"]["expected"] == 0.661295
    assert all(c["tolerance"] == 1e-3 for c in legs.values())
    groups = [c for c in data["checks"] if c["check"].startswith("group")]
    assert len(groups) == 3
    assert all(c["tolerance"] == 2e-4 for c in groups)


# -- trajectory -------------------------------------------------------------------


def test_trajectory_rows(tmp_path):
    out = tmp_path / "traj.csv"
    main(["trajectory", "--s", "5/2", "--x0", "1/2", "--t0", "0", "--t1", "2",
          "--dt", "1", "--out", str(out)])
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,dxdt"
    xs = [float(line.split(",")[1]) for line in lines[1:]]
    assert xs == pytest.approx([0.5, 0.625, 0.5859375], abs=1e-9)
    # velocity vanishes at the turning point t=1
    v_at_tp = float(lines[2].split(",")[2])
    assert abs(v_at_tp) < 1e-6


def test_trajectory_s4_closed_form(tmp_path):
    out = tmp_path / "t4.csv"
    main(["trajectory", "--s", "4", "--x0", "0.3", "--t0", "0", "--t1", "1.5",
          "--dt", "0.25", "--out", str(out)])
    theta = math.asin(math.sqrt(0.3))
    for line in out.read_text().splitlines()[1:]:
        t, x, _ = (float(c) for c in line.split(","))
        assert abs(x - math.sin(2.0**t * theta) ** 2) < 1e-8


# -- branches ---------------------------------------------------------------------


def test_branches_csv_eight_columns(tmp_path):
    out = tmp_path / "b.csv"
    main(["branches", "--s", "10/3", "--count", "8", "--samples", "65", "--out", str(out)])
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    assert header == ["x"] + [f"branch_{k}" for k in range(8)]
    rows = [line.split(",") for line in lines[1:]]
    # every branch column is populated somewhere
    for col in range(1, 9):
        assert any(r[col] for r in rows)
    # branch 0 tracks x near the origin
    x1, b0 = float(rows[1][0]), float(rows[1][1])
    assert b0 == pytest.approx(x1, rel=5e-2)
    # empty cells exactly where the branch is undefined (branch 1 below 25/54)
    for r in rows:
        if float(r[0]) < 25 / 54 - 1e-9:
            assert r[2] == ""
    # every populated cell satisfies the functional equation through the
    # single-valued inverse: Phi(s * Psi_k(x)) == s x (1-x)
    from schroder_lab.schroder import eval_phi

    s = 10.0 / 3.0
    for r in rows[1:-1]:
        x = float(r[0])
        for cell in r[1:]:
            if cell:
                val = float(cell)
                assert abs(eval_phi(s * val, Fraction(10, 3)) - s * x * (1 - x)) < 1e-8


# -- verify -----------------------------------------------------------------------


def test_verify_only_orbit_and_json(tmp_path):
    out = tmp_path / "rep.json"
    code = main(["verify", "--only", "orbit", "--json", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["summary"]["passed"] == data["summary"]["total"] > 0


def test_verify_unknown_check_errors():
    with pytest.raises(KeyError):
        main(["verify", "--only", "nonsense"])


# -- output plumbing ----------------------------------------------------------------


def test_env_var_sets_default_output_dir(tmp_path):
    import os

    env = dict(os.environ, SCHRODER_LAB_OUT=str(tmp_path))
    proc = run_cli("coeffs", "--s", "3", "--n", "4", "--out", "sub/c.csv", env=env)
    assert proc.returncode == 0
    assert (tmp_path / "sub" / "c.csv").exists()


def test_stdout_default_and_determinism():
    a = run_cli("coeffs", "--s", "10/3", "--n", "8")
    b = run_cli("coeffs", "--s", "10/3", "--n", "8")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert a.stdout.endswith("\n")


def test_unsupported_format_is_rejected():
    proc = run_cli("coeffs", "--s", "3", "--n", "4", "--format", "json")
    assert proc.returncode == 2
