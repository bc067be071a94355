import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from trace_pi.algebra import build_c2, save_algebra
from trace_pi.cli import main
from trace_pi.schemas import ALGEBRA_FILE, SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json", "--no-timing")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMAS[data["command"]])
    return code, data


def test_codim_d2(capsys):
    code, data = run_json(capsys, "codim", "--algebra", "d2", "--trace", "1,0", "--n", "1..5")
    assert code == 0
    assert [r["codim"] for r in data["rows"]] == [2, 4, 8, 16, 32]
    assert all(r["match"] for r in data["rows"])


def test_codim_ck(capsys):
    code, data = run_json(capsys, "codim", "--algebra", "ck", "--k", "2", "--alpha", "1", "--n", "1..6")
    assert code == 0 and [r["codim"] for r in data["rows"]] == [n + 1 for n in range(1, 7)]


def test_codim_without_tag(capsys):
    code, out, _ = run(capsys, "codim", "--algebra", "ut2", "--n", "2")
    assert code == 0
    header, rule, row = out.splitlines()[1:4]
    cells = row.split()
    assert cells[header.split().index("match")] == "-"
    assert cells[header.split().index("closed_form")] == "-"


def test_codim_mismatch_exit(capsys):
    code, data = run_json(capsys, "codim", "--algebra", "d3", "--trace", "1,2,0", "--n", "3")
    assert code == 1 and data["rows"][0]["match"] is False


def test_check(capsys):
    code, data = run_json(capsys, "check", "--poly", "f2", "--alpha", "1", "--algebra", "d2", "--trace", "1,0")
    assert code == 0 and data["verdict"] == "identity"
    code, data = run_json(capsys, "check", "--poly", "f2", "--alpha", "1", "--algebra", "d2", "--trace", "1,1")
    assert code == 1 and data["witness"] == ["e11", "e22"]
    code, data = run_json(capsys, "check", "--poly", "x1*x2 - x2*x1", "--algebra", "ut2")
    assert code == 1 and data["verdict"] == "not-identity"


def test_verify(capsys):
    code, data = run_json(capsys, "verify", "--gens", "f1,g3", "--alpha", "1", "--algebra", "d3", "--trace",
                          "1,1,0", "--max-n", "5")
    assert code == 0 and data["ok"] and len(data["rows"]) == 5
    code, data = run_json(capsys, "verify", "--gens", "f1", "--algebra", "d2", "--trace", "1,0", "--max-n", "2")
    assert code == 1 and data["first_failure"] == 2


def test_basis(capsys):
    code, data = run_json(capsys, "basis", "--family", "one-trace+two-trace", "--algebra", "d3", "--trace",
                          "1,1,0", "--n", "3", "--list")
    assert code == 0 and data["size"] == 14 and len(data["monomials"]) == 14


def test_compare(capsys):
    code, data = run_json(capsys, "compare", "--a", "d3", "--trace-a", "1,0,0", "--b", "d2", "--trace-b", "1,0",
                          "--max-n", "5", "--mode", "equal")
    assert code == 0 and data["verdict"] == "equal"
    code, data = run_json(capsys, "compare", "--a", "c2", "--alpha-a", "2", "--beta-a", "0", "--b", "d2",
                          "--trace-b", "1,1", "--max-n", "4", "--mode", "contains")
    assert code == 0 and data["verdict"] == "contained"
    code, data = run_json(capsys, "compare", "--a", "d2", "--trace-a", "1,1", "--b", "d2", "--trace-b", "1,0",
                          "--max-n", "2", "--mode", "contains")
    assert code == 1


def test_count(capsys):
    code, data = run_json(capsys, "count", "--n", "3", "--k", "2")
    assert code == 0 and data["rows"][0]["count"] == 6 == data["rows"][0]["stirling"]


def test_paper_suite_subset(capsys):
    code, data = run_json(capsys, "paper-suite", "--only", "7", "--only", "10")
    assert code == 0 and data["passed"] == data["total"] == 2
    assert all(r["elapsed_ms"] is None for r in data["rows"])


def test_csv_output(capsys):
    code, out, _ = run(capsys, "codim", "--algebra", "c2", "--alpha", "0", "--beta", "1", "--n", "1,3",
                       "--format", "csv", "--no-timing")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["codim"] for r in rows] == ["2", "12"]
    assert rows[0]["algebra"] == "C2[t=0,1]"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "count", "--n", "4", "--k", "1", "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rows"][0]["count"] == 15


def test_algebra_file(tmp_path, capsys):
    path = tmp_path / "c2.json"
    save_algebra(build_c2(0, 1), path)
    jsonschema.validate(json.loads(path.read_text()), ALGEBRA_FILE)
    code, data = run_json(capsys, "codim", "--algebra", "file", "--file", str(path), "--n", "4")
    assert code == 0 and data["rows"][0]["codim"] == 27


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--poly", "x1 +", "--algebra", "ut2"],
        ["check", "--poly", "x1*x1", "--algebra", "ut2"],
        ["codim", "--algebra", "d2", "--n", "2"],
        ["codim", "--algebra", "d2", "--trace", "1,0.5", "--n", "2"],
        ["codim", "--algebra", "nope", "--n", "2"],
        ["codim", "--algebra", "file", "--file", "/nonexistent.json", "--n", "2"],
        ["codim", "--algebra", "ut2", "--n", "0"],
        ["codim", "--algebra", "ut2", "--n", "2", "--mode", "commutative"],
        ["count", "--n", "2", "--k", "3"],
        ["check", "--poly", "f2", "--algebra", "ut2"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_row_cap(monkeypatch, capsys):
    monkeypatch.setenv("TRACE_PI_ROW_CAP", "100")
    code, _, err = run(capsys, "codim", "--algebra", "ut2", "--n", "5")
    assert code == 3 and "cap" in err
    monkeypatch.delenv("TRACE_PI_ROW_CAP")
    code, _, _ = run(capsys, "codim", "--algebra", "ut2", "--n", "5", "--row-cap", "100")
    assert code == 3


def test_workers_do_not_change_output(capsys):
    base = ["codim", "--algebra", "d3", "--trace", "1,1,0", "--n", "1..5", "--format", "json", "--no-timing",
            "--mode", "general"]
    _, one, _ = run(capsys, *base, "--workers", "1")
    _, four, _ = run(capsys, *base, "--workers", "4")
    assert one == four


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trace_pi", "count", "--n", "3", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "6" in proc.stdout


def test_single_record_csv(capsys):
    code, out, _ = run(capsys, "basis", "--family", "c2", "--algebra", "c2", "--alpha", "1", "--beta", "1",
                       "--n", "4", "--format", "csv")
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and row["size"] == row["codim"] == row["rank"] == "27" and row["ok"] == "yes"
    code, out, _ = run(capsys, "check", "--poly", "f1", "--algebra", "mn", "--k", "2", "--format", "csv")
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert code == 1 and row["identity"] == "no" and row["witness"] == "e11 e12"
