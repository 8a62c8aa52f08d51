import json
import subprocess
import sys

import pytest

from dualgalois.cli import EXIT_INPUT, EXIT_OK, dumps, main, run

from conftest import FERMAT, NODAL


def _json(argv):
    code, out = run(argv + ["--json"])
    return code, json.loads(out), out


@pytest.mark.parametrize(
    "expr, genus, dual_degree, kinds",
    [(FERMAT, 1, 6, []), (NODAL, 0, 4, ["node"])],
)
def test_analyze(expr, genus, dual_degree, kinds):
    code, js, _ = _json(["analyze", "--curve", expr])
    rep = js["curves"][0]
    assert code == EXIT_OK
    assert (rep["genus"], rep["dual_degree"]) == (genus, dual_degree)
    assert [s["classification"] for s in rep["singularities"]] == kinds
    assert js["config"] == {"command": "analyze", "seed": 1, "precision": "double", "version": "0.1.0"}


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["analyze", "--curve", "X^3+Y^3"], "X + Y"),
        (["analyze", "--curve", "X^3+Y^2"], "not homogeneous"),
        (["analyze", "--curve", "X^3+Y^*3"], "position 6"),
        (["monodromy", "--curve", NODAL, "--point", "0:0:1"], "singular"),
        (["monodromy", "--curve", FERMAT, "--point", "1:2"], "bad point"),
        (["monodromy", "--curve", FERMAT], "--point"),
        (["verify-cubic", "--curve", "X^3-Y*Z^2"], "cusp"),
    ],
)
def test_input_errors(argv, fragment):
    code, out = run(argv)
    assert code == EXIT_INPUT
    assert fragment in out


def test_missing_file(tmp_path):
    code, out = run(["analyze", "--file", str(tmp_path / "nope.txt")])
    assert code == EXIT_INPUT


def test_corpus_file(tmp_path):
    corpus = tmp_path / "curves.txt"
    corpus.write_text(f"# two cubics\n{FERMAT}\n{NODAL}  # nodal\n")
    code, js, _ = _json(["analyze", "--file", str(corpus)])
    assert code == EXIT_OK and [c["genus"] for c in js["curves"]] == [1, 0]


def test_dual_command():
    code, js, _ = _json(["dual", "--curve", "X^3*Z-Y^4"])
    assert code == EXIT_OK
    assert js["duals"][0]["dual_curve"] == "256*X^3*Z - 27*Y^4"


@pytest.mark.parametrize(
    "argv, order, tag",
    [
        (["--point", "1:0:0"], 3, "cyclic(3)"),
        (["--point", "1:1:1"], 6, "S(3)"),
    ],
)
def test_monodromy_command(argv, order, tag):
    code, js, _ = _json(["monodromy", "--curve", FERMAT] + argv)
    run_js = js["runs"][0]
    assert code == EXIT_OK
    assert run_js["group"]["order"] == order and run_js["group"]["classification"]["name"] == tag
    assert run_js["seed"] == 1 and run_js["precision"] == 53


def test_monodromy_on_dual():
    code, js, _ = _json(["monodromy", "--curve", FERMAT, "--point", "1:0:0", "--on-dual"])
    assert code == EXIT_OK and js["runs"][0]["group"]["order"] == 18


def test_quartic_galois_points():
    code, js, _ = _json(["galois-points", "--curve", "X^3*Z-Y^4", "--confirm"])
    reps = js["curves"][0]["reports"]
    inner = [r for r in reps if r["kind"] == "inner"]
    assert code == EXIT_OK and len(inner) == 1
    assert inner[0]["prediction"]["verdict"] == "galois" and inner[0]["confirmed_order"] == 3


def test_json_round_trip_and_determinism(tmp_path):
    argv = ["galois-points", "--curve", NODAL, "--confirm", "--seed", "7", "--json"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == EXIT_OK
    assert main(argv + ["--out", str(b)]) == EXIT_OK
    text = a.read_text()
    assert text == b.read_text()
    assert dumps(json.loads(text)) == text
    js = json.loads(text)
    assert js["config"]["seed"] == 7
    assert [r["confirmed_group"] for r in js["curves"][0]["reports"]] == ["D_8"] * 3


def test_seed_changes_nothing_exact():
    _, a, _ = _json(["monodromy", "--curve", FERMAT, "--point", "1:1:1", "--seed", "3"])
    _, b, _ = _json(["monodromy", "--curve", FERMAT, "--point", "1:1:1", "--seed", "4"])
    assert a["runs"][0]["group"]["order"] == b["runs"][0]["group"]["order"] == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dualgalois", "analyze", "--curve", "X^3+Y^3"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_INPUT
    assert "reducible" in proc.stderr
