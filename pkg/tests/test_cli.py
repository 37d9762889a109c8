import csv
import io
import json
import os
import subprocess
import sys

import pytest

from majorder.cli import main, parse_grid
from majorder.report import Outcome, RunReport, dumps


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def usage_exit(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_majorize(capsys):
    code, out = run_cli(capsys, "majorize", "3,1", "2,2")
    d = json.loads(out)
    assert code == 0 and d["summary"]["result"] == "FirstMajorizesStrictly"
    assert [r["prefix_a"] for r in d["records"]] == [3, 4]
    assert json.loads(run_cli(capsys, "majorize", "2,2", "3,1")[1])["summary"]["result"] == \
        "SecondMajorizesStrictly"
    assert json.loads(run_cli(capsys, "majorize", "1", "1")[1])["summary"]["result"] == "Equal"


@pytest.mark.parametrize("argv", [
    ("majorize", "3,0", "1"),
    ("majorize", "a", "1"),
    ("majorize", "", "1"),
    ("solve", "no-such-equation", "3"),
    ("solve", "pow-plus", "0"),
    ("verify", "no-such-suite"),
    ("bogus",),
    ("gamma", "-1"),
    ("gamma", "abc"),
    ("fib", "-3"),
    ("uniqueness", "rec:2,-1,1"),
    ("verify", "theorem-c", "--points", "1"),
    ("--format", "xml", "fib", "3"),
    ("solve", "pow-plus", "3", "--precision", "8"),
])
def test_usage_errors_exit_64(capsys, argv):
    assert usage_exit(capsys, *argv) == 64


def test_solve_pow_minus(capsys):
    code, out = run_cli(capsys, "solve", "pow-minus", "8")
    d = json.loads(out)
    assert code == 0 and d["outcome"] == "Verified"
    assert {(r["k"], r["n"]) for r in d["records"]} == {(k, k) for k in range(1, 9)} | {(1, 2), (2, 1)}


def test_solve_prod_plus(capsys):
    code, out = run_cli(capsys, "solve", "prod-plus", "10")
    d = json.loads(out)
    assert code == 0 and {r["classification"] for r in d["records"]} == {"Trivial"}


def test_solve_sum_f1(capsys):
    code, out = run_cli(capsys, "solve", "sum-f1", "8")
    d = json.loads(out)
    assert code in (0, 2)
    if code == 0:
        assert {r["classification"] for r in d["records"]} == {"Trivial"}


def test_solve_counterexample_exit_1(capsys):
    code, out = run_cli(capsys, "solve", "ratio-root", "6")
    d = json.loads(out)
    assert code == 1 and d["outcome"] == "CounterexampleFound"
    assert any(r["classification"] == "Unexpected" for r in d["records"])


def test_solve_unresolved_exit_2(capsys, monkeypatch):
    code, out = run_cli(capsys, "solve", "sum-f2", "4", "--precision", "32", "--max-precision", "32")
    assert code in (0, 2)
    # force a cap too small to separate anything
    import majorder.monotone as mono
    from majorder.errors import Unresolved

    def never(*a, **k):
        raise Unresolved("forced")
    monkeypatch.setattr(mono, "_sign_escalating", never)
    code, out = run_cli(capsys, "solve", "sum-f1", "3")
    d = json.loads(out)
    assert code == 2 and d["outcome"] == "Unresolved"
    assert all(r["status"] == "unresolved" for r in d["records"])


@pytest.mark.parametrize("argv", [
    ("verify", "poset-axioms"),
    ("verify", "theorem-c", "--points", "1.1", "e", "50"),
    ("verify", "uniqueness", "--source", "fib-even"),
    ("verify", "fibonacci", "--n-max", "50"),
    ("uniqueness", "fib-odd", "--max-index", "8"),
    ("gamma", "e"),
    ("gamma", "1/2"),
    ("fib", "30", "--binet"),
    ("enumerate", "--max-sum", "5"),
])
def test_verified_commands(capsys, argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0, out
    assert json.loads(out)["outcome"] == "Verified"


def test_theorem_c_grid_default(capsys):
    code, out = run_cli(capsys, "verify", "theorem-c")
    d = json.loads(out)
    assert code == 0 and len(d["records"]) == 490
    assert d["records"][0]["x"] == "11/10" and d["records"][-1]["x"] == "50"


def test_recurrence_suite_reports_counterexamples(capsys):
    code, out = run_cli(capsys, "verify", "recurrence")
    d = json.loads(out)
    assert code == 1
    bad = {r["spec"] for r in d["records"] if r["status"] == "counterexample"}
    assert bad == {"rec(a=2,b=-1,A1=2)", "rec(a=2,b=-1,A1=3)"}


def test_theorem_a_suite(capsys):
    code, out = run_cli(capsys, "verify", "theorem-a", "--max-sum", "7", "--x-max", "20")
    d = json.loads(out)
    status = {r["function"]: r["status"] for r in d["records"]}
    assert code == 1
    assert status["factorial"] == status["fib-even"] == "ok"
    assert status["f2"] == "ineligible"
    assert status["ratio-root"] == "counterexample"
    code, _ = run_cli(capsys, "verify", "theorem-a", "--max-sum", "7", "--function", "factorial",
                      "--function", "fact-over-self-power")
    assert code == 0


def test_theorem_b_suite(capsys):
    code, out = run_cli(capsys, "verify", "theorem-b", "--max-sum", "5", "--function", "f1")
    assert code == 0
    code, out = run_cli(capsys, "verify", "theorem-b", "--max-sum", "5")
    rows = {r["function"]: r for r in json.loads(out)["records"]}
    assert rows["f2"]["violations"] == rows["f2"]["violations"] - rows["f2"]["violations_equal_total"] > 0


def test_json_round_trip_is_byte_identical(capsys):
    for argv in (("gamma", "7/3"), ("solve", "pow-minus", "5"), ("verify", "fibonacci", "--n-max", "20")):
        _, out = run_cli(capsys, *argv)
        assert dumps(json.loads(out)) == out
        assert out.endswith("\n") and "\r" not in out


def test_reports_contain_no_floats(capsys):
    _, out = run_cli(capsys, "gamma", "5")

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
    walk(json.loads(out))


def test_dumps_rejects_floats():
    with pytest.raises(TypeError):
        dumps({"x": 1.5})


def test_csv_output(capsys):
    code, out = run_cli(capsys, "--format", "csv", "solve", "pow-plus", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert rows[0]["classification"] == "Trivial" and rows[0]["k"] == "1"
    code, out = run_cli(capsys, "gamma", "2", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert json.loads(row["ln_gamma"])["precision"] == 128


def test_report_outcome_rule():
    assert RunReport([], {}, [{"status": "ok"}]).outcome is Outcome.VERIFIED
    assert RunReport([], {}, [{"status": "unresolved"}]).exit_code == 2
    assert RunReport([], {}, [{"status": "unresolved"}, {"status": "counterexample"}]).exit_code == 1


def test_parse_grid():
    g = parse_grid("1:2:0.25")
    assert [str(x) for x in g] == ["1", "5/4", "3/2", "7/4", "2"]


def _env():
    env = dict(os.environ)
    env.pop("MAJORDER_MAX_PRECISION", None)
    return env


def test_console_script_and_module():
    out = subprocess.run(["majorder", "fib", "10"], capture_output=True, text=True, env=_env())
    assert out.returncode == 0 and json.loads(out.stdout)["records"][0]["value"] == "89"
    out = subprocess.run([sys.executable, "-m", "majorder", "majorize", "3,3", "4,1"],
                         capture_output=True, text=True, env=_env())
    assert json.loads(out.stdout)["summary"]["result"] == "Incomparable"
    out = subprocess.run([sys.executable, "-m", "majorder", "solve"], capture_output=True, text=True)
    assert out.returncode == 64 and "error" in out.stderr


def test_env_caps_precision():
    env = _env()
    env["MAJORDER_MAX_PRECISION"] = "64"
    code = "from majorder.config import DEFAULTS; print(DEFAULTS.precision_schedule)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "(64,)"
