import io
import json
import subprocess
import sys

import pytest

from jel.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def result(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    body = json.loads(out)
    assert set(body) == {"command", "params", "result", "provenance"}
    return body["result"]


def test_eberlein_and_eigenvalue():
    assert result("eberlein", "--k", "3", "--i", "2", "--w", "3", "--n", "12") == {"value": "7"}
    assert result("eigenvalue", "--i", "1", "--n", "9", "--w", "3") == {"value": "9"}


def test_min_support_examples():
    r = result("min-support", "--n", "9", "--w", "3")
    assert r["value"] == "39" and r["winner"] == "TwoValued(3)"
    r = result("min-support", "--n", "8", "--w", "2")
    assert r["winner"] == "PairVector;TwoValued(4)"


def test_min_support_with_oracle():
    r = result("min-support", "--n", "7", "--w", "2", "--oracle", "--radius", "3")
    assert r["oracle"]["agrees"] is True


def test_bounds_command():
    r = result("bounds", "--i", "2", "--n", "10", "--w", "3")
    assert (r["best_lower"], r["best_upper"]) == ("11", "40")


def test_scan_csv(tmp_path):
    path = tmp_path / "scan.csv"
    r = result("scan", "--n-min", "6", "--n-max", "12", "--csv", str(path))
    assert "rows" not in r
    lines = path.read_text().splitlines()
    assert lines[0] == "n,w,value,winner,pair_branch,twovalued_k,twovalued_value"
    assert lines[1].startswith("6,2,6,TwoValued(3),")
    assert r["summary"]["ties"] == [["8", "2"]]


def test_partition_build_and_verify(tmp_path):
    path = tmp_path / "even.tsv"
    r = result("build-partition", "--kind", "even", "--r", "4", "--out", str(path))
    assert r["quotient"] == [["9", "6"], ["8", "7"]] and r["upper_bound"] == "24"
    v = result("verify-partition", "--file", str(path), "--vector", "3,-4")
    assert v["equitable"] is True and v["eigenvalue"] == "1" and v["upper_bound"] == "24"
    b = result("bounds", "--i", "2", "--n", "8", "--w", "3", "--partition", str(path), "--vector", "3,-4")
    assert {"value": "24", "provenance": "user-partition"} in b["upper_bounds"]


def test_verify_non_equitable(tmp_path):
    path = tmp_path / "bad.tsv"
    lines = ['{"n": 5, "r": 2, "w": 2}'] + [f"{k}\t{1 if k < 3 else 2}" for k in range(10)]
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = call("verify-partition", "--file", str(path))
    assert code == 0
    assert json.loads(out)["result"]["equitable"] is False


def test_search_negatives(tmp_path):
    wpath = tmp_path / "w.json"
    r = result("search-negatives", "--i", "1", "--n", "5", "--w", "2", "--exhaustive", "--witness-out", str(wpath))
    assert r["value"] == "3" and r["status"] == "exact"
    assert json.loads(wpath.read_text())["n"] == 5
    r = result("search-negatives", "--i", "1", "--n", "6", "--w", "2", "--exhaustive", "--symmetric")
    assert r["value"] == "5"


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["eberlein", "--k", "1"],
    ["eberlein", "--k", "5", "--i", "0", "--w", "3", "--n", "9"],
    ["search-negatives", "--i", "1", "--n", "5", "--w", "2"],
    ["bounds", "--i", "2", "--n", "8", "--w", "3", "--partition", "x.tsv"],
])
def test_invalid_arguments_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err


@pytest.mark.parametrize("argv", [
    ["min-support", "--n", "5", "--w", "3"],
    ["min-support", "--n", "30", "--w", "6", "--oracle"],
    ["search-negatives", "--i", "2", "--n", "9", "--w", "3", "--exhaustive"],
])
def test_refusals_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err.startswith("refused:")


def test_env_cap_refusal(monkeypatch):
    monkeypatch.setenv("JEL_MAX_VERTICES", "5")
    code, _, err = call("search-negatives", "--i", "1", "--n", "5", "--w", "2", "--exhaustive")
    assert code == 2 and "JEL_MAX_VERTICES" in err


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "jel", "search-negatives", "--i", "2", "--n", "7", "--w", "3", "--random", "--iters", "40", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")
