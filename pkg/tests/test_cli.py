from __future__ import annotations

import contextlib
import io
import json
import shutil
import subprocess

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggcs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out.strip() else None), err


def test_check_algebra_exact(capsys):
    code, report, _ = run_json(capsys, "check-algebra", "--k", "3", "--deformation", "arik-coon", "--mode", "exact")
    assert code == 0
    assert len(report["results"]) == 6
    assert all(r["status"] == "pass" and r["max_residual"] == "exact-zero" for r in report["results"])


def test_rho_table(capsys):
    code, out, _ = run(capsys, "rho", "--k", "3", "--deformation", "chung")
    assert code == 0
    assert '# rho: ["0", "3/4", "3/4*q", "0"]' in out
    assert len([ln for ln in out.splitlines() if ln.startswith("PASS")]) == 3


def test_unity_json(capsys):
    code, report, _ = run_json(capsys, "unity", "--k", "3", "--deformation", "arik-coon", "--variant", "majid")
    assert code == 0
    assert report["version"] == 1
    assert set(report) == {"version", "tool", "job", "results", "artifacts"}
    ids = {r["check_id"]: r for r in report["results"]}
    assert ids["unity:verify"]["max_residual"] == "exact-zero"
    assert [c["exact"] for c in report["artifacts"]["weight_solved"]] == ["1", "-1 - q", "1"]
    cmp = report["artifacts"]["weight_comparison"]
    assert set(cmp) == {"majid-derived", "majid-display", "majid-display-reordered"}
    assert all(len(v["ratios"]) == 3 for v in cmp.values())


def test_json_is_deterministic(capsys):
    args = ("all", "--k", "3", "--variant", "kerner", "--format", "json")
    main(list(args))
    first = capsys.readouterr().out
    main(list(args))
    assert capsys.readouterr().out == first


def test_check_ids_are_unique(capsys):
    _, report, _ = run_json(capsys, "all", "--k", "4", "--variant", "kerner", "--mode", "float")
    ids = [r["check_id"] for r in report["results"]]
    assert len(ids) == len(set(ids))


def test_coherent_reports_rule_info(capsys):
    code, report, _ = run_json(capsys, "coherent", "--k", "3", "--variant", "kerner")
    assert code == 0
    statuses = {r["check_id"]: r["status"] for r in report["results"]}
    assert statuses["coherent:eigenstate"] == "pass"
    assert statuses["rules:conjugation:xi-a+-vs-xibar-a"] == "info"
    assert report["artifacts"]["alpha"][1]["exact"] == "-1 - q"


def test_eval(capsys):
    code, report, _ = run_json(capsys, "eval", "theta^3", "--k", "3")
    assert code == 0 and report["artifacts"]["canonical"] == "0"
    code, report, _ = run_json(capsys, "eval", "theta * ad", "--k", "3", "--variant", "kerner")
    assert code == 0
    assert any(r["status"] == "info" and "read as xi" in r["detail"] for r in report["results"])


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "eval", "theta +* ad", "--k", "3")
    assert code == 2 and "line 1, column" in err
    assert run(capsys, "eval", "phi", "--k", "3")[0] == 2
    assert run(capsys, "rho", "--k", "3", "--rho-expr", "(n")[0] == 2


def test_config_errors_exit_2(capsys):
    assert run(capsys, "rho", "--k", "1")[0] == 2
    assert run(capsys, "rho")[0] == 2
    assert run(capsys, "rho", "--k", "4", "--q-exponent", "2")[0] == 2
    assert run(capsys, "rho", "--k", "3", "--deformation", "ordinary")[0] == 2
    assert run(capsys, "rho", "--k", "3", "--mode", "symbolic")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "rho", "--config", "/nonexistent.toml")[0] == 2


def test_ordinary_defaults_to_k2(capsys):
    code, report, _ = run_json(capsys, "all", "--deformation", "ordinary")
    assert code == 0 and report["job"]["k"] == 2


def test_verification_failure_exit_1(capsys):
    code, out, _ = run(capsys, "rho", "--k", "3", "--rho-expr", "n*(n-1)")
    assert code == 1 and "FAIL" in out
    assert run(capsys, "coherent", "--k", "3", "--deformation", "n*(n-1)")[0] == 1


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "job.toml"
    cfg.write_text('k = 4\ndeformation = "chung"\nvariant = "kerner"\nmode = "float"\nformat = "json"\n')
    code, out, _ = run(capsys, "coherent", "--config", str(cfg))
    job = json.loads(out)["job"]
    assert code == 0 and job["k"] == 4 and job["deformation"] == "chung" and job["mode"] == "float"
    code, out, _ = run(capsys, "coherent", "--config", str(cfg), "--k", "5", "--mode", "exact")
    job = json.loads(out)["job"]
    assert job["k"] == 5 and job["mode"] == "exact" and job["variant"] == "kerner"
    bad = tmp_path / "bad.toml"
    bad.write_text("colour = 3\n")
    assert run(capsys, "rho", "--config", str(bad))[0] == 2
    broken = tmp_path / "broken.toml"
    broken.write_text("k = = 3\n")
    assert run(capsys, "rho", "--config", str(broken))[0] == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "rho", "--k", "5", "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["artifacts"]["rho"][5] == "0"


PASSING = [
    ("check-algebra", "--k", "5", "--deformation", "chung"),
    ("coherent", "--k", "4", "--variant", "kerner", "--mode", "float"),
    ("unity", "--k", "3", "--deformation", "biedenharn-macfarlane"),
    ("all", "--k", "2", "--deformation", "ordinary", "--mode", "float"),
    ("all", "--k", "3", "--variant", "kerner"),
    ("eval", "a * ad - q * ad * a", "--k", "3"),
]
FAILING = [
    ("rho", "--k", "4", "--rho-expr", "n*(n-2)"),
    ("unity", "--k", "3", "--rho-expr", "n - 1"),
    ("check-algebra", "--k", "3", "--deformation", "1 + n"),
]
BROKEN = [
    ("rho", "--k", "3", "--rho-expr", "n +"),
    ("eval", "ket(", "--k", "3"),
    ("unity", "--k", "0"),
    ("coherent", "--k", "6", "--q-exponent", "3"),
    ("eval", "j", "--k", "4"),
]


@settings(max_examples=40)
@given(st.sampled_from([(a, 0) for a in PASSING] + [(a, 1) for a in FAILING] + [(a, 2) for a in BROKEN]))
def test_exit_code_contract(case):
    argv, expected = case
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        assert main(list(argv)) == expected


@pytest.mark.skipif(shutil.which("ggcs") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["ggcs", "check-algebra", "--k", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("PASS") == 6
