import dataclasses
import io
import json
from types import MappingProxyType

import pytest

import cremona.builtins as bt
from cremona.cli import main
from cremona.monomial import GlWord
from cremona.parse import parse_components, parse_poly
from cremona.words import GnWord, eval_word
from cremona.birmap import equal_up_to_scalar, parse_map

XI3 = "[[1,0,0],[1,1,0],[0,0,1]]"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_jacobian_of_sigma2():
    code, out, _ = run("jacobian", "[x1*x2:x0*x2:x0*x1]")
    assert code == 0 and out.strip() == "2*x0*x1*x2"


def test_certify_xi3_is_obstructed():
    code, out, _ = run("certify", "--n", "3", "--matrix", XI3)
    assert code == 1 and "Obstructed" in out


def test_compose_swap_with_itself():
    code, out, _ = run("compose", "[x1:x0]", "[x1:x0]")
    assert code == 0 and out.strip() == "[x0 : x1]"
    code, out, _ = run("compose", "[x0:x1]", "[x1:x0]")
    assert code == 0 and out.strip() == "[x1 : x0]"


def test_degree_and_files(tmp_path):
    path = tmp_path / "sigma.txt"
    path.write_text("[x1*x2*x3 : x0*x2*x3 : x0*x1*x3 : x0*x1*x2]\n")
    code, out, _ = run("degree", str(path))
    assert code == 0 and out.strip() == "3"
    code, out, _ = run("degree", "--map", '{"n": 1, "components": ["x1", "x0"]}')
    assert code == 0 and out.strip() == "1"


@pytest.mark.parametrize("argv", [
    ["jacobian", "[x0 : x1^2]"],
    ["jacobian", "x0:x1"],
    ["jacobian"],
    ["certify", "--matrix", "[[2,0],[0,1]]"],
    ["builtin", "--name", "nope"],
    ["builtin", "--name", "dolgachev", "--n", "3"],
    ["f2-index", "--n", "40"],
    ["selftest", "--only", "nope"],
    ["jacobian", "[x0:x1]", "--field", "fp:4"],
    ["no-such-command"],
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 2 and err


@pytest.mark.parametrize("argv", [
    ["square-test", "[x1*x2:x0*x2:x0*x1]", "--field", "fp:3"],
    ["certify", "--n", "3", "--matrix", XI3, "--field", "fp:2"],
])
def test_guardrails(argv):
    code, _, err = run(*argv)
    assert code == 3 and err.startswith("refused")


def test_negative_results_exit_one():
    assert run("square-test", "[x0^2:x0*x1:x1*x2:x0*x3]")[0] == 1
    assert run("monomial-check", "[x0^2:x0*x1+x2^2:x0*x2]")[0] == 1
    assert run("monomial-check", "[x0^2:x0*x1:x1*x2:x0*x3]")[0] == 0


@pytest.mark.parametrize("argv", [
    ["square-test", "[x0^2:x0*x1:x1*x2:x0*x3]"],
    ["square-test", "[x1*x2*x3:x0*x2*x3:x0*x1*x3:x0*x1*x2]"],
    ["certify", "--n", "3", "--matrix", XI3],
    ["certify", "--n", "4", "--matrix", "[[1,0,0,0],[1,1,0,0],[0,0,1,0],[0,0,0,1]]"],
    ["monomial-check", "[x0^2:x0*x1+x2^2:x0*x2]"],
])
def test_text_and_json_agree(argv):
    code_t, out_t, _ = run(*argv)
    code_j, out_j, _ = run(*argv, "--output", "json")
    assert code_t == code_j == json.loads(out_j)["status"]


def test_json_maps_round_trip():
    code, out, _ = run("compose", "[x1*x2:x0*x2:x0*x1]", "[x0:x0+x1:x2]", "--output", "json")
    obj = json.loads(out)
    comps = parse_components(json.dumps({"n": 2, "components": obj["components"]}))
    expected = run("compose", "[x1*x2:x0*x2:x0*x1]", "[x0:x0+x1:x2]")[1].strip()
    assert parse_map(expected) == parse_map("[" + ":".join(obj["components"]) + "]")
    assert len(comps) == 3
    code, out, _ = run("jacobian", "[x1*x2:x0*x2:x0*x1]", "--output", "json")
    assert parse_poly(json.loads(out)["jacobian"], 3) == parse_poly("2*x0*x1*x2", 3)


def test_json_words_round_trip(tmp_path):
    code, out, _ = run("builtin", "--name", "theta", "--n", "3", "--output", "json")
    obj = json.loads(out)
    w = GnWord.from_json(obj["word"])
    assert equal_up_to_scalar(eval_word(w), parse_map(json.dumps(obj["map"])))
    path = tmp_path / "w.json"
    path.write_text(json.dumps(obj["word"]))
    code, out, _ = run("verify-word", "--word", str(path), "[x0*x1:x0^2:x2*x1:x3*x1]")
    assert code == 0
    code, _, _ = run("verify-word", "--word", str(path), "[x1*x2*x3:x0*x2*x3:x0*x1*x3:x0*x1*x2]")
    assert code == 1


def test_json_matrix_words_round_trip():
    A = [[2, 1, 0], [1, 1, 0], [0, 0, 1]]
    code, out, _ = run("monomial-decompose", "--matrix", json.dumps(A), "--output", "json")
    assert code == 0
    w = GlWord.from_json(json.loads(out))
    assert [list(r) for r in w.evaluate()] == A


def test_builtin_params():
    assert run("builtin", "--name", "psi", "--n", "5", "--params", "k=2", "--check")[0] == 0
    assert run("builtin", "--name", "psi", "--n", "5", "--params", '{"k": 2}')[0] == 0
    assert run("builtin", "--name", "psi", "--n", "5", "--params", "k=x")[0] == 2


def test_misc_commands():
    assert run("f2-index", "--n", "3")[1].strip() == "7"
    assert run("affine-jacobian", "[x0^2:x0*x1+x2^2:x0*x2]")[1].strip() == "1"
    code, out, _ = run("discrepancy", "[x1*x2:x0*x2:x0*x1]", "x0")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run("embed", "[x1*x2:x0*x2:x0*x1]")
    assert out.strip() == "[x0*x1*x2 : x0^2*x2 : x0^2*x1 : x1*x2*x3]"
    code, out, _ = run("certify", "--shear", "2,0", "--n", "3")
    assert code == 0 and out.startswith("certified")


def test_selftest_subset():
    code, out, _ = run("selftest", "--only", "jacobian")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS  jacobian")
    assert "1/1 criteria passed" in out


def test_selftest_catches_a_corrupted_table(monkeypatch):
    table = dict(bt.TABLE)
    # swap the closed forms of two maps so their words no longer match
    table["theta"] = dataclasses.replace(table["theta"], make_map=bt.TABLE["tau"].make_map)
    monkeypatch.setattr(bt, "TABLE", MappingProxyType(table))
    code, out, _ = run("selftest", "--only", "builtins")
    assert code == 1
    assert out.startswith("FAIL  builtins") and "theta" in out
