import json

import pytest

from grcodes.cli import main

Z9 = ["--p", "3", "--a", "2", "--m", "1", "--s", "1", "--kind", "negacyclic"]
WORKED = ["--p", "3", "--a", "2", "--m", "1", "--s", "3", "--kind", "negacyclic",
         "--gen", "(x+1)-3", "--gen", "(x+1)^2+3*(x+1)", "--gen", "(x+1)^3+3*(x+1)"]


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_distance(capsys):
    code, doc = run_json(capsys, ["distance", *Z9, "--gen", "3", "--gen", "x+1"])
    assert code == 0 and doc["command"] == "distance"
    assert doc["result"]["distance"] == 1
    assert set(doc) == {"params", "command", "result", "checks"}


def test_reduce_worked_example(capsys):
    code, doc = run_json(capsys, ["reduce", *WORKED])
    assert code == 0
    assert doc["result"]["generators"] == ["x+7", "6*x+6"]
    assert all(c["pass"] for c in doc["checks"])
    names = {c["name"].split("_")[0] for c in doc["checks"]}
    assert names >= {"p1", "p2", "p3", "p4", "p5"}


def test_verify(capsys):
    code, doc = run_json(capsys, ["verify", *Z9])
    assert code == 0 and doc["result"]["nilpotency"] == 5
    assert all(c["pass"] for c in doc["checks"])


def test_canonical_and_lattice_and_oracle(capsys):
    code, doc = run_json(capsys, ["canonical", *Z9, "--gen", "(x+1)^2+3*(x+1)"])
    assert code == 0 and [(t["level"], t["exponent"]) for t in doc["result"]["terms"]] == [(0, 2), (1, 1)]
    code, doc = run_json(capsys, ["lattice", *Z9])
    assert code == 0 and doc["result"]["count"] == len(doc["result"]["ideals"])
    code, doc = run_json(capsys, ["oracle", *Z9, "--gen", "3*(x+1)^2"])
    assert code == 0 and doc["result"] == {"brute_distance": 3, "code_distance": 3, "agree": True}


def test_text_matches_json(capsys):
    argv = ["distance", *Z9, "--gen", "3*(x+1)^2"]
    assert main(argv) == 0
    text = capsys.readouterr().out
    _, doc = run_json(capsys, argv)
    assert f"distance: {doc['result']['distance']}" in text
    assert f"i_0: {doc['result']['i_0']}" in text


@pytest.mark.parametrize("argv", [
    ["distance", *WORKED],
    ["reduce", *Z9, "--gen", "3", "--gen", "x+1", "--gen", "3*(x+1)"],
    ["verify", "--p", "2", "--a", "2", "--s", "2", "--kind", "cyclic"],
    ["oracle", "--p", "3", "--a", "2", "--m", "2", "--s", "1", "--gen", "x+1", "--gen", "3"],
])
def test_json_roundtrip(capsys, tmp_path, argv):
    code, doc = run_json(capsys, argv)
    path = tmp_path / "job.json"
    path.write_text(json.dumps(doc))
    assert main(["replay", str(path)]) == code
    again = json.loads(capsys.readouterr().out)
    assert again == doc


@pytest.mark.parametrize("argv, needle", [
    (["distance", "--p", "4", "--a", "2", "--s", "1", "--gen", "1"], "prime"),
    (["distance", "--p", "3", "--a", "2", "--s", "0", "--gen", "1"], "s must be"),
    (["distance", *Z9], "--gen"),
    (["distance", *Z9, "--gen", "x+"], "expected"),
    (["canonical", *Z9, "--gen", "1", "--gen", "x"], "exactly 1"),
    (["oracle", *Z9, "--gen", "1", "--max-enumeration", "10"], "bound"),
    (["distance", "--p", "2", "--a", "2", "--m", "2", "--s", "1", "--modulus", "x^2+1", "--gen", "1"], "irreducible"),
])
def test_validation_errors(capsys, argv, needle):
    assert main(argv) == 2
    assert needle in capsys.readouterr().err


def test_env_bound(capsys, monkeypatch):
    monkeypatch.setenv("GR_CODES_MAX_ENUM", "10")
    assert main(["oracle", *Z9, "--gen", "1"]) == 2
    capsys.readouterr()
