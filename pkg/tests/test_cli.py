import csv
import io
import json

import pytest

from hecketrace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_trace_all(capsys):
    code, out, _ = run(capsys, "trace", "--k", "12", "--p", "5", "--method", "all")
    assert code == 0
    assert rows(out) == [{"k": "12", "p": "5", "trace": "4830", "verified": "true"}]


def test_trace_all_json_lists_routes(capsys):
    code, out, _ = run(capsys, "trace", "--k", "12", "--p", "5", "--format", "json")
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["routes"] == {"pointcount": 4830, "hijikata": 4830, "hypergeometric": 4830,
                             "recursive": 4830, "oracle": 4830}
    assert set(rec) == {"k", "p", "trace", "verified", "routes"}


@pytest.mark.parametrize("method", ["pointcount", "hijikata", "hyp", "recursion", "oracle"])
def test_trace_single_method(capsys, method):
    code, out, _ = run(capsys, "trace", "--k", "4", "--p", "5", "--method", method)
    assert code == 0 and rows(out)[0]["trace"] == "0"


def test_trace_weight2_hijikata_only(capsys):
    assert run(capsys, "trace", "--k", "2", "--p", "7", "--method", "hijikata")[0] == 0
    assert run(capsys, "trace", "--k", "2", "--p", "7", "--method", "pointcount")[0] == 1


@pytest.mark.parametrize("argv", [
    ["trace", "--k", "3", "--p", "5"],
    ["trace", "--k", "12", "--p", "9"],
    ["trace", "--k", "28", "--p", "5", "--method", "oracle"],
    ["trace", "--k", "12"],
    ["trace", "--k", "x", "--p", "5"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err


def test_trace_disagreement_exit_code(capsys, monkeypatch):
    from hecketrace import trace_engine
    monkeypatch.setitem(trace_engine.ROUTE_FUNCS, "hijikata", lambda k, p: 7)
    code, out, err = run(capsys, "trace", "--k", "12", "--p", "5")
    assert code == 2 and rows(out)[0]["verified"] == "false"


def test_table_tau(capsys):
    code, out, _ = run(capsys, "table", "--kmin", "12", "--kmax", "12", "--pmax", "13", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "k,p,trace,verified"
    assert [(r["p"], r["trace"], r["verified"]) for r in rows(out)] == [
        ("5", "4830", "true"), ("7", "-16744", "true"),
        ("11", "534612", "true"), ("13", "-577738", "true")]


def test_table_zero_weights(capsys):
    code, out, _ = run(capsys, "table", "--kmin", "4", "--kmax", "10", "--pmax", "13")
    assert code == 0 and len(rows(out)) == 16
    assert {r["trace"] for r in rows(out)} == {"0"}


def test_table_empty(capsys):
    code, out, _ = run(capsys, "table", "--kmin", "4", "--kmax", "4", "--pmax", "4")
    assert code == 0 and rows(out) == []


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--kmin", "12", "--kmax", "12", "--pmax", "7", "--format", "json")
    assert json.loads(out) == [{"k": 12, "p": 5, "trace": 4830, "verified": True},
                               {"k": 12, "p": 7, "trace": -16744, "verified": True}]


def test_table_parallel_matches_serial(capsys):
    argv = ["table", "--kmin", "12", "--kmax", "16", "--pmax", "23"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_table_disagreement(capsys, monkeypatch):
    from hecketrace import cli
    monkeypatch.setattr(cli, "trace_hijikata", lambda k, p: 1)
    code, _, err = run(capsys, "table", "--kmin", "12", "--kmax", "12", "--pmax", "7")
    assert code == 2 and "k=12, p=5" in err


def test_hyp_level1(capsys):
    code, out, _ = run(capsys, "hyp", "--q", "25", "--top", "2,10", "--bottom", "0", "--x", "t=2")
    assert code == 0
    (r,) = rows(out)
    # -25 * T^12(2) * T^6(-1) * F = a(2,25) = -9, both characters trivial here
    assert abs(float(r["re"]) - 9 / 25) < 1e-11 and abs(float(r["im"])) < 1e-11
    assert r["generator"] == "1+2*sqrt(2)"


def test_hyp_zero_argument(capsys):
    code, out, _ = run(capsys, "hyp", "--q", "13", "--top", "1,5", "--bottom", "0", "--x", "0")
    assert code == 0 and rows(out)[0]["re"] == "0" and rows(out)[0]["im"] == "0"


def test_hyp_extension_element(capsys):
    code, out, _ = run(capsys, "hyp", "--q", "49", "--top", "4,20", "--bottom", "0", "--x", "3,1")
    assert code == 0 and rows(out)[0]["q"] == "49"


@pytest.mark.parametrize("argv", [
    ["--q", "15", "--top", "1", "--bottom", "0", "--x", "1"],
    ["--q", "9", "--top", "1,1", "--bottom", "0", "--x", "1"],
    ["--q", "13", "--top", "1,a", "--bottom", "0", "--x", "1"],
    ["--q", "13", "--top", "1,2", "--bottom", "0", "--x", "1,2"],
    ["--q", "13", "--top", "1,2,3", "--bottom", "0", "--x", "2"],
])
def test_hyp_usage_errors(capsys, argv):
    assert run(capsys, "hyp", *argv)[0] == 1


def test_curve(capsys):
    code, out, _ = run(capsys, "curve", "--p", "5", "--t", "3")
    assert code == 0
    assert rows(out) == [{"t": "3", "p": "5", "a_p": "-2", "npoints_p": "8",
                          "a_p2": "-6", "npoints_p2": "32"}]


@pytest.mark.parametrize("argv", [["--p", "5", "--t", "1"], ["--p", "4", "--t", "2"], ["--p", "7", "--t", "7"]])
def test_curve_usage(capsys, argv):
    assert run(capsys, "curve", *argv)[0] == 1


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--pmax", "5", "--kmax", "4")
    assert code == 0
    fams = {r["family"]: r for r in rows(out)}
    assert fams["hand_check_p5"]["passed"] == "true" and int(fams["hand_check_p5"]["checked"]) > 0
    assert all(r["passed"] == "true" for r in fams.values())


def test_verify_guard_rails(capsys):
    assert run(capsys, "verify", "--pmax", "500")[0] == 1
    assert run(capsys, "verify", "--kmax", "28")[0] == 1


def test_verify_failure_exit(capsys, monkeypatch):
    from hecketrace import verify
    monkeypatch.setattr(verify, "CHECKS", (lambda pmax, kmax, tol: verify.CheckResult("x", False, 1, "boom"),))
    code, _, err = run(capsys, "verify", "--pmax", "5", "--kmax", "4")
    assert code == 2 and "boom" in err


@pytest.mark.parametrize("argv", [
    ["trace", "--k", "24", "--p", "7", "--format", "json"],
    ["table", "--kmin", "12", "--kmax", "16", "--pmax", "17"],
    ["hyp", "--q", "49", "--top", "4,20", "--bottom", "0", "--x", "5"],
])
def test_output_is_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
