import json
from math import comb

import pytest

from algdiag.cli import main
from algdiag.corpus import load_corpus, random_etale_entries, run_corpus
from algdiag.jsonio import emit, ingest, series_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


JSON_COMMANDS = [
    ["--vars", "x,t", "--order", "5", "diag", "big", "1/(1-x-t)"],
    ["--vars", "x,y", "--order", "9", "diag", "small", "1"],
    ["--vars", "x,t", "--order", "4", "lift", "t^2+2*t-x"],
    ["--vars", "x,t", "--order", "6", "lift", "t^2-(1+x)", "--lambda", "-1"],
    ["--vars", "x,t", "--order", "6", "lift-factor", "t^2-(1+x)", "t-1", "t+1"],
    ["--vars", "x,t", "--order", "8", "dl", "t^2+2*t-x", "--num", "x,x", "--den", "1"],
    ["--vars", "x,y", "--order", "8", "weierstrass", "prepare", "--g", "(1+x)*(y^2-x)"],
    ["--vars", "x,y", "--order", "8", "weierstrass", "divide", "--f", "y^3", "--g", "y-x"],
    ["--vars", "x,t", "--order", "8", "am-code", "--q", "t^2+2*t-x", "--verify"],
    ["--vars", "x,t", "--order", "8", "am-code", "--s", "t^2-t+x", "--num", "0,0,1", "--verify"],
    ["--vars", "x,t", "--order", "6", "annihilate", "add", "t^2-(1+x)", "t^3-(1+x)", "--roots", "1,1"],
    ["--vars", "x,t", "--order", "6", "hadamard", "1/(1-x-t)", "1/(1-x*t)"],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: a[4] if len(a) > 4 else a[0])
def test_json_round_trip(capsys, argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    assert code == 0
    obj = json.loads(out)
    assert emit(ingest(obj)) == obj


def test_diag_output(capsys):
    code, out, _ = run(capsys, "--vars", "x,t", "--order", "5", "diag", "big", "1/(1-x-t)")
    assert code == 0
    assert out.strip() == "1 + 2*x + 6*x^2 + 20*x^3 + 70*x^4 + 252*x^5 + O(6)"


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "diag", "big", "1/(1-x-t)", "--vars", "x,t", "--order", "3", "--format", "json")
    s = series_from_json(json.loads(out)["series"])
    assert code == 0 and [s.coeff((n,)) for n in range(4)] == [comb(2 * n, n) for n in range(4)]


def test_lift_output(capsys):
    _, out, _ = run(capsys, "--vars", "x,t", "--order", "4", "lift", "t^2+2*t-x")
    assert out.strip() == "1/2*x - 1/8*x^2 + 1/16*x^3 - 5/128*x^4 + O(5)"


def test_hadamard_output(capsys):
    _, out, _ = run(capsys, "--vars", "x,t", "--order", "6", "hadamard", "1/(1-x-t)", "1/(1-x*t)")
    assert out.strip() == "1 + 2*x*t + 6*x^2*t^2 + 20*x^3*t^3 + O(7)"


def test_sextic(capsys):
    code, out, _ = run(capsys, "--vars", "x,t", "--format", "json", "annihilate", "add", "t^2-(1+x)", "t^3-(1+x)")
    A = ingest(json.loads(out))["annihilator"]
    assert code == 0 and A.degree_in("t") == 6


@pytest.mark.parametrize("argv,expected", [
    (["--vars", "x,t", "lift", "t^2+2*t-"], 2),
    (["lift", "t-x"], 2),
    (["--vars", "x,t", "lift", "t-y"], 2),
    (["--vars", "x,t", "frobnicate"], 2),
    (["--vars", "x,t", "--order", "-1", "lift", "t-x"], 2),
    (["--vars", "x,t", "diag", "big", "1/(x+t)"], 3),
    (["--vars", "x,t", "lift", "t^2-x"], 3),
    (["--vars", "x,t", "dl", "t^2+x^3-x^2"], 3),
    (["--vars", "x,t", "am-code", "--q", "t^2-x^2*(1+x)"], 3),
    (["--vars", "x,y", "weierstrass", "prepare", "--g", "x*y"], 3),
    (["--vars", "x,t", "lift-factor", "t^2-x", "t", "t"], 3),
    (["--vars", "x,t", "--order", "6", "annihilate", "add", "t^2-(1+x)", "t^3-(1+x)", "--roots", "1,1"], 0),
    (["--vars", "x,t", "--order", "6", "annihilate", "add", "t^2-(1+x)", "t^2-(1+x)", "--roots", "1,0"], 3),
])
def test_exit_codes(capsys, argv, expected):
    code, _, _ = run(capsys, *argv)
    assert code == expected


def test_verification_failure_exits_one(capsys, tmp_path):
    entries = [{"name": "wrong", "kind": "lift",
                "inputs": {"minpoly": "t-x", "vars": ["x", "t"], "order": 3},
                "expected": {"oracle": "catalan"}}]
    path = tmp_path / "c.json"
    path.write_text(json.dumps(entries))
    code, out, _ = run(capsys, "corpus", str(path))
    assert code == 1 and out.startswith("FAIL")


def test_builtin_corpus_passes(capsys):
    code, out, _ = run(capsys, "corpus", "--jobs", "2", "--random", "3", "--seed", "7")
    assert code == 0, out
    assert out.strip().endswith("entries passed")


def test_corpus_results_are_deterministic():
    entries = [e for e in load_corpus() if e["kind"] != "diagonal-identity"] + random_etale_entries(4, 1)
    a = run_corpus(entries, jobs=1)
    b = run_corpus(list(reversed(entries)), jobs=2)
    assert [(r.name, r.passed, r.detail) for r in a] == [(r.name, r.passed, r.detail) for r in b]
