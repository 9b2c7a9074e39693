import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from examforge.cli import main

DATA = Path(__file__).parent / "data"
EXAM = DATA / "exam"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_matches_golden(capsys):
    code, out, err = run(capsys, "analyze", DATA / "quicksort.hs")
    assert code == 0 and err == ""
    assert out == (DATA / "quicksort.golden.json").read_text()


def test_analyze_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.hs"
    bad.write_text("f x = (x +\n")
    code, out, err = run(capsys, "analyze", bad)
    assert code == 2 and out == ""
    assert "bad.hs:2:1:" in err


def test_analyze_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.hs")
    assert code == 2 and "no such file" in err


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", DATA / "quicksort.hs", "--out", target)
    assert code == 0 and out == ""
    assert target.read_text() == (DATA / "quicksort.golden.json").read_text()


def test_htrsl_compile_json_and_plain(capsys):
    code, out, _ = run(capsys, "htrsl-compile", DATA / "types.htrsl")
    assert code == 0
    data = json.loads(out)
    assert [d["spec_index"] for d in data] == [0, 1]
    assert data[0]["groups"] == {"a": "g1"}
    assert data[0]["dialect"] == "ecmascript-2018"
    code, plain, _ = run(capsys, "htrsl-compile", DATA / "types.htrsl", "--plain")
    assert plain.splitlines() == [d["pattern"] for d in data]


def test_htrsl_compile_errors(capsys, tmp_path):
    f = tmp_path / "bad.htrsl"
    f.write_text('"a" | "b" (')
    code, _, err = run(capsys, "htrsl-compile", f)
    assert code == 2 and "bad.htrsl" in err
    f.write_text('["x" | y] y')
    code, _, err = run(capsys, "htrsl-compile", f)
    assert code == 2 and "spec 0" in err


def test_htrsl_check(capsys, tmp_path):
    code, out, _ = run(capsys, "htrsl-check", DATA / "types.htrsl", "--examples", DATA / "types.examples.json")
    assert code == 0
    assert [r["verdict"] for r in json.loads(out)] == ["pass", "pass"]
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps([{"positives": ["Num a => [b] -> String"], "negatives": []}]))
    code, out, err = run(capsys, "htrsl-check", DATA / "types.htrsl", "--examples", wrong)
    assert code == 1
    assert json.loads(out)[0]["failed_positives"] == ["Num a => [b] -> String"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"7": {"positives": []}}))
    code, _, _ = run(capsys, "htrsl-check", DATA / "types.htrsl", "--examples", bad)
    assert code == 3


def test_restrict(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"functions": {"quicksort": {"forbidden_calls": ["filter"]}}}))
    code, out, err = run(capsys, "restrict", DATA / "quicksort.hs", "--spec", spec)
    assert code == 1
    assert json.loads(out)["violations"][0]["message"] == "quicksort: forbidden call filter"
    assert "forbidden call filter" in err
    spec.write_text(json.dumps({"required_features": ["patMatch"]}))
    assert run(capsys, "restrict", DATA / "quicksort.hs", "--spec", spec)[0] == 0
    # an existing analysis report works as input too
    assert run(capsys, "restrict", DATA / "quicksort.golden.json", "--spec", spec)[0] == 0
    spec.write_text(json.dumps({"allowed_calls": ["map"], "forbidden_calls": ["filter"]}))
    assert run(capsys, "restrict", DATA / "quicksort.hs", "--spec", spec)[0] == 3


@pytest.mark.parametrize("algorithm,attempt,points", [
    ("sequence", "figure_attempt_a.json", "1.5"),
    ("legacy", "figure_attempt_a.json", "0.5"),
    ("sequence", "figure_attempt_b.json", "1"),
    ("legacy", "figure_attempt_b.json", "2"),
])
def test_grade_proof(capsys, algorithm, attempt, points):
    code, out, _ = run(
        capsys, "grade-proof", "--task", DATA / "figure_puzzle.json", "--attempt", DATA / attempt, "--algorithm", algorithm
    )
    assert code == 0
    data = json.loads(out)
    assert data["points"] == points and data["algorithm"] == algorithm


def test_grade_proof_errors(capsys, tmp_path):
    attempt = tmp_path / "a.json"
    attempt.write_text(json.dumps({"sequence": ["not in the pool"]}))
    assert run(capsys, "grade-proof", "--task", DATA / "figure_puzzle.json", "--attempt", attempt)[0] == 2
    task = tmp_path / "t.json"
    task.write_text(json.dumps({"pool": [{"text": "x", "weight": 3}], "solutions": [{"items": ["x"], "points": 1}]}))
    attempt.write_text(json.dumps(["x"]))
    assert run(capsys, "grade-proof", "--task", task, "--attempt", attempt)[0] == 3


def test_grade_exam(capsys, tmp_path):
    csv_path = tmp_path / "summary.csv"
    code, out, _ = run(
        capsys, "grade-exam", "--manifest", EXAM / "manifest.json", "--submissions", EXAM / "submissions", "--csv", csv_path
    )
    assert code == 0
    reports = json.loads(out)["reports"]
    assert [r["student"] for r in reports] == ["s01", "s02"]
    assert reports[0]["total"] == "23"
    assert csv_path.read_text().splitlines()[1] == "s01,2,3,1,2,6,4,0,5,23,1"


def test_grade_exam_errors(capsys, tmp_path):
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"tasks": [{"id": "x", "kind": "essay", "max_points": 1}]}))
    assert run(capsys, "grade-exam", "--manifest", manifest, "--submissions", EXAM / "submissions")[0] == 3
    assert run(capsys, "grade-exam", "--manifest", EXAM / "manifest.json", "--submissions", tmp_path / "none")[0] == 2


def test_output_is_deterministic(capsys):
    argv = ["grade-exam", "--manifest", EXAM / "manifest.json", "--submissions", EXAM / "submissions"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize(
    "command", ["htrsl-compile", "htrsl-check", "analyze", "restrict", "grade-proof", "grade-exam", None]
)
def test_help_exits_zero(capsys, command):
    argv = [command, "--help"] if command else ["--help"]
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 0
    assert "usage:" in capsys.readouterr().out


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze", "--frobnicate", str(DATA / "quicksort.hs")])
    assert info.value.code == 2
    assert "usage:" in capsys.readouterr().err


def test_color_never_has_no_escapes(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("EXAMFORGE_COLOR", "never")
    monkeypatch.setattr(sys.stderr, "isatty", lambda: True, raising=False)
    _, _, err = run(capsys, "analyze", tmp_path / "missing.hs")
    assert "\033[" not in err


@pytest.mark.skipif(shutil.which("examforge") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["examforge", "analyze", str(DATA / "quicksort.hs")], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == (DATA / "quicksort.golden.json").read_text()
