import io
import json
import subprocess
import sys

import pytest

from nonnorm.cli import _safe, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_verify_certified():
    code, doc = call_json("verify", "--base", "gaussian", "-n", "24", "-m", "119", "--json")
    assert code == 0
    assert doc["schema"] == "nonnorm/1"
    assert sorted((c["degree"], c["M"]) for c in doc["certificates"]) == [(3, 7), (8, 17)]


def test_verify_negative():
    code, doc = call_json("verify", "--base", "gaussian", "-n", "8", "-m", "41")
    assert code == 1
    assert "1+i is a quadratic residue at both primes above 41" in " ".join(doc["reasons"])


def test_metrics_exact():
    code, text = call("metrics", "--base", "gaussian", "-n", "16", "-m", "17", "--gamma", "1+1i", "--exact")
    assert code == 0
    doc = json.loads(text)
    assert {k: doc[k] for k in ("E", "xi")} == {"E": 6016, "xi": "1/6016^16"}


def test_metrics_exact_unavailable():
    code, doc = call_json("metrics", "--base", "gaussian", "-n", "8", "-m", "17", "--gamma", "1+1i", "--exact")
    assert code == 1 and doc["reasons"]


def test_metrics_float_and_permute():
    code, doc = call_json("metrics", "--base", "gaussian", "-n", "8", "-m", "17", "--gamma", "1+1i")
    assert code == 0 and round(doc["E"]) == 278130
    code, doc2 = call_json("metrics", "--base", "gaussian", "-n", "8", "-m", "17", "--gamma", "1+1i",
                           "--permute", "7,6,5,4,3,2,1,0")
    assert code == 0 and doc2["E"] != doc["E"]


def test_construct_roundtrip(tmp_path):
    for base, n in (("gaussian", 24), ("eisenstein", 32), ("gaussian", 1)):
        code, text = call("construct", "--base", base, "-n", str(n))
        assert code == 0
        path = tmp_path / "plan.json"
        path.write_text(text)
        code, doc = call_json("verify", "--from-json", str(path))
        assert code == 0 and doc["status"] == "certified"


def test_construct_exhausted(monkeypatch):
    monkeypatch.setenv("NONNORM_SEARCH_LIMIT", "8")
    code, doc = call_json("construct", "--base", "gaussian", "-n", "6")
    assert code == 1 and doc["reasons"]


def test_table_csv_stable():
    a = call("table", "--base", "gaussian", "--from", "2", "--to", "12", "--conformance")
    b = call("table", "--base", "gaussian", "--from", "2", "--to", "12", "--conformance", "--csv")
    assert a == b
    lines = a[1].splitlines()
    assert lines[0] == "n,modulus,routes,conformance"
    assert lines[1] == "2,3,2->3(B),match"


def test_table_json_and_fixture(tmp_path):
    fixture = tmp_path / "t.csv"
    fixture.write_text("base,n,modulus\ngaussian,2,3\ngaussian,3,9\n")
    code, doc = call_json("table", "--base", "gaussian", "--from", "2", "--to", "3", "--json", "--conformance", str(fixture))
    assert code == 0
    assert [r["conformance"] for r in doc["rows"]] == ["match", "smaller-valid"]


def test_orbit():
    code, doc = call_json("orbit", "--base", "gaussian", "-n", "8", "-m", "17")
    assert code == 0 and doc["exponents"][1] == [3, 14]


def test_mindet():
    code, doc = call_json("mindet", "--base", "gaussian", "-n", "2", "-m", "3", "--gamma", "1+1i", "--radius", "1")
    assert code == 0 and doc["min_det"] == 1 and doc["checked"] == 6560


@pytest.mark.parametrize("argv", [
    ["verify", "--bogus"],
    ["metrics", "--base", "gaussian", "-n", "2", "-m", "3", "--gamma", "7+0i"],
    ["mindet", "--base", "gaussian", "-n", "2", "-m", "3", "--gamma", "1+1i", "--radius", "0"],
    ["verify", "--base", "gaussian", "-n", "2", "-m", "12"],
    ["verify", "--base", "gaussian"],
    [],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_uncertified_plan_is_negative():
    code, doc = call_json("orbit", "--base", "gaussian", "-n", "8", "-m", "15")
    assert code == 1 and doc["reasons"]


def test_large_ints_are_strings():
    assert _safe({"a": 2**60, "b": [3, 2**53]}) == {"a": str(2**60), "b": [3, str(2**53)]}


def test_entry_point_pipe():
    construct = subprocess.run([sys.executable, "-m", "nonnorm", "construct", "--base", "gaussian", "-n", "12"],
                               capture_output=True, text=True, check=True)
    verify = subprocess.run([sys.executable, "-m", "nonnorm", "verify", "--from-json", "-"],
                            input=construct.stdout, capture_output=True, text=True)
    assert verify.returncode == 0
    bad = subprocess.run([sys.executable, "-m", "nonnorm", "nope"], capture_output=True, text=True)
    assert bad.returncode == 2 and "usage" in bad.stderr
