import json
import subprocess
import sys

import pytest

from mvdual import formats as fm
from mvdual.cli import main
from mvdual.geometry import Polyhedron, poly_equal

TRI = {"dim": 2, "simplices": [[["0", "0"], ["1", "0"], ["0", "1"]]]}
EDGE = {"dim": 2, "simplices": [[["0", "0"], ["1", "0"]]]}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_variety(capsys):
    doc = run_json(capsys, "variety", "--arity", "1", "--rel", "x0(+)x0=1")
    assert poly_equal(fm.polyhedron_from_json(doc), Polyhedron(1, [[(fm.unrat("1/2"),), (1,)]]))


def test_taut(capsys):
    assert run(capsys, "taut", "~x0 (+) x0", "--format", "text")[1].strip() == "TAUTOLOGY"
    assert run(capsys, "taut", "x0", "--format", "text")[1].strip() == "NOT A TAUTOLOGY"


def test_tensor_spectrum(capsys):
    doc = run_json(capsys, "tensor-spectrum", "--chain", "2", "--chain", "2")
    assert len(doc["labels"]) == 9 and len(doc["points"]) == 1
    assert set(doc["points"][0]) == {"0", "1/4", "1/2", "1"}


def test_term_commands(capsys):
    assert run_json(capsys, "parse", "x0 & x1")["core"] == "~(~x0 (+) ~x1)"
    assert run_json(capsys, "eval", "x0 (+) x0", "--point", "1/3") == {"value": "2/3"}
    assert run_json(capsys, "equiv", "x0 (+) x0", "~(~x0 & ~x0)") == {"equivalent": True}
    f = run_json(capsys, "compile", "x0 (+) x0")
    g = run_json(capsys, "compile", "~(~x0 & ~x0)")
    assert run_json(capsys, "pl-equal", json.dumps(f), json.dumps(g)) == {"equal": True}


def test_duality_commands(capsys, tmp_path):
    point = {"dim": 1, "simplices": [[["1/2"]]]}
    assert run_json(capsys, "in-ideal", "--poly", json.dumps(point), "--rel", "x0=~x0") == {"in_ideal": True}
    S = {"arity": 1, "relations": [["x0", "~x0"]]}
    T = {"arity": 1, "relations": [["x0 (+) x0", "1"], ["~x0 (+) ~x0", "1"]]}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(T))
    assert run_json(capsys, "rad-eq", json.dumps(S), str(path)) == {"radical_equal": True}
    hom = {"source": {"arity": 1, "relations": []}, "target": {"arity": 2, "relations": []},
           "images": ["x1 (+) x1"]}
    assert run_json(capsys, "check-hom", json.dumps(hom)) == {"well_defined": True}
    z = run_json(capsys, "dual-hom", json.dumps(hom))
    doc = run_json(capsys, "factor", json.dumps(z))
    assert doc["coordinates"] == [1] and doc["commutes"]


def test_finite_commands(capsys):
    X = run_json(capsys, "coproduct-spectrum", "--chain", "2", "--chain", "2")
    assert len(run_json(capsys, "algebra-of-spectrum", json.dumps(X))["elements"]) == 3
    assert len(run_json(capsys, "spectrum", "--chain", "1", "--chain", "1")["points"]) == 2
    alg = json.dumps({"ambient": 1, "elements": [["0"], ["1"]]})
    doc = run_json(capsys, "tensor-relations-check", "--algebra", alg, "--chain", "1",
                   "--point", '["0","0","0","1"]')
    assert doc["satisfied"] and doc["factors"] == [["0", "1"], ["0", "1"]]


def test_tangent_commands(capsys):
    germ = {"base": ["0", "0"], "coeffs": [["1", "1"], ["1", "0"]]}
    doc = run_json(capsys, "tangent-extract", json.dumps(germ), "--k", "2")
    assert doc["directions"] == [["1", "1"], ["1/2", "-1/2"]] and doc["rays"] == [[1, 1], [1, -1]]
    flat = {"base": ["0", "0"], "coeffs": [["1", "0"]]}
    assert run_json(capsys, "germ-in-poly", json.dumps(TRI), json.dumps(flat))["eventually_in"]
    tangent = {"base": ["0", "0"], "directions": [["0", "1"]]}
    w = {"S": [["0", "0"], ["0", "1/2"]], "F": [0], "lambda": ["1/2"]}
    doc = run_json(capsys, "outgoing-verify", json.dumps(EDGE), json.dumps(tangent), json.dumps(w))
    assert doc == {"conditions": [True, True, True], "outgoing": True}
    doc = run_json(capsys, "outgoing-check", json.dumps(TRI), json.dumps(flat), json.dumps(w), "--k", "1")
    assert doc == {"outgoing": False}
    doc = run_json(capsys, "poly-falsify", json.dumps(TRI), "--count", "20", "--seed", "5")
    assert doc["samples"] == 20 and doc["counterexamples"] == []


@pytest.mark.parametrize("argv", [
    ["parse", "x0 (+"],
    ["variety", "--presentation", "{not json"],
    ["variety", "--presentation", '{"arity": 1}'],
    ["in-ideal", "--poly", json.dumps(TRI), "--rel", "x0"],
    ["germ-in-poly", "missing-file.json", "{}"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("input error")


def test_malformed_json_reports_location(capsys):
    _, _, err = run(capsys, "variety", "--presentation", '{"arity": 1,\n "relations": [}')
    assert "line 2" in err
    _, _, err = run(capsys, "variety", "--presentation", '{"arity": 1, "relations": [["x0", 3]]}')
    assert "relations/0/1" in err


@pytest.mark.parametrize("argv", [
    ["dual-hom", json.dumps({"source": {"arity": 1, "relations": [["x0", "~x0"]]},
                             "target": {"arity": 1, "relations": []}, "images": ["x0"]})],
    ["tangent-extract", json.dumps({"base": ["0", "0"], "coeffs": [["1", "0"]]}), "--k", "2"],
    ["eval", "x0", "--point", "3/2"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error")


def test_out_and_approx(capsys, tmp_path):
    out = tmp_path / "v.txt"
    assert main(["eval", "x0 & x0", "--point", "2/3", "--format", "text", "--approx", "--out", str(out)]) == 0
    assert out.read_text().strip() == 'value: "1/3"~0.333333'


def test_console_script_deterministic():
    argv = [sys.executable, "-m", "mvdual.cli", "tensor-spectrum", "--chain", "2", "--chain", "3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"1/6" in a
