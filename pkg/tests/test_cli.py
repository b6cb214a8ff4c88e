from __future__ import annotations

import json
from pathlib import Path

import pytest

from gl2deform.cli import main

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_diamond(capsys):
    code, out, _ = run(capsys, "check-diamond", DATA / "glq2.json")
    assert code == 0
    assert out.startswith("ambiguities: 15, resolved: 15")
    code, out, _ = run(capsys, "check-diamond", DATA / "glq2.json", "--localized")
    assert code == 0 and out.startswith("ambiguities: 32, resolved: 32")


def test_check_diamond_is_deterministic(capsys):
    first = run(capsys, "check-diamond", DATA / "glq2.json", "--json")
    second = run(capsys, "check-diamond", DATA / "glq2.json", "--json")
    assert first == second
    assert json.loads(first[1])["verdict"] == "confluent"


def test_fusion(capsys):
    assert run(capsys, "fusion", "U(1,0)", "U(1,0)")[:2] == (0, "U(2,0) + U(0,1)\n")
    code, out, _ = run(capsys, "fusion", "U(2)", "U(1)", "--root", "6", "--json")
    assert code == 0 and json.loads(out)["semisimple"] is False
    code, _, err = run(capsys, "fusion", "V(2)", "V(2)", "--root", "5")
    assert code == 2 and "not determined" in err


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", DATA / "jordanian.json", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["kappa"] == "4" and obj["genericity"] == "Generic"
    code, _, _ = run(capsys, "invariants", '{"A": [["1","2"],["0","1"]], "B": [["1","0"],["0","1"]]}')
    assert code == 1


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", DATA / "glq2.json", "--max-len", "2", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["total"] == 20 and obj["by_length"] == [1, 5, 14]


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", DATA / "glq2.json", "x21*x12")
    assert code == 0 and out.strip() == "1/q*x11*x22 - 1/q*D"
    code, out2, _ = run(capsys, "normal-form", DATA / "glq2.json", "x21*x12", "--random", "--seed", "4")
    assert out2 == out


def test_input_errors(capsys):
    code, _, err = run(capsys, "normal-form", DATA / "glq2.json", "x11 + y")
    assert code == 2 and "column 7" in err
    code, _, err = run(capsys, "invariants", '{"A": [["1", "2"]')
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "invariants", DATA / "missing.json")
    assert code == 2
    code, _, err = run(capsys, "invariants", '{"A": [["1","1"],["1","1"]], "B": [["1","0"],["0","1"]]}')
    assert code == 2


def test_precondition_error_names_condition(capsys):
    bundle = '{"E": [["1","1"],["0","1"]]}'
    code, _, err = run(capsys, "verify-star", bundle)
    assert code == 2 and "lambda" in err


def test_witnesses(capsys):
    assert run(capsys, "verify-witness", DATA / "iso_witness.json")[0] == 0
    obj = json.loads((DATA / "iso_witness.json").read_text())
    obj["D"][0][0] = "q"
    code, out, _ = run(capsys, "verify-witness", json.dumps(obj))
    assert code == 1 and "D mismatches" in out
    assert run(capsys, "galois-check", DATA / "glq2_to_glp1p2.json")[0] == 0
    galois = {"C1": [["0", "1"], ["-2", "0"]], "D1": [["0", "1"], ["-3", "0"]],
              "C2": [["0", "1"], ["-2", "0"]], "D2": [["0", "1"], ["-3", "0"]],
              "M": [["1", "0"], ["0", "1"]]}
    assert run(capsys, "verify-witness", json.dumps(galois), "--galois")[0] == 0


@pytest.mark.parametrize("argv", [
    ("verify-hopf", DATA / "glq2.json"),
    ("verify-star", DATA / "star_aq.json"),
    ("verify-morphism", DATA / "congruence_witness.json", "--kind", "congruence"),
    ("verify-morphism", DATA / "congruence_witness.json", "--kind", "inversion"),
])
def test_certificate_commands(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert "checks passed" in out and "FAILED" not in out
