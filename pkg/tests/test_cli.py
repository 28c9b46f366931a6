import json
import os
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from koenig.cli import main

INPUTS = Path(__file__).resolve().parents[1] / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def schema():
    return json.loads(resources.files("koenig").joinpath("data/report.schema.json").read_text())


def test_analyze_cusp(capsys):
    code, out, _ = run(capsys, "analyze", INPUTS / "cusp.toml")
    assert code == 0
    rep = json.loads(out)
    p = rep["points"][0]
    assert p["level"] == 1 and p["Q"]["dim"] == 1 and p["Q"]["gl_dim"] == 0
    jsonschema.validate(rep, schema())


def test_analyze_curve_validates(capsys):
    code, out, _ = run(capsys, "analyze", INPUTS / "two_component_curve.toml")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, schema())
    assert rep["curve"]["gl_dim"] <= rep["curve"]["gl_dim_Q"] + 2


def test_analyze_is_deterministic(capsys):
    a = run(capsys, "analyze", "fixture:D6")[1]
    b = run(capsys, "analyze", "fixture:D6")[1]
    c = run(capsys, "analyze", "fixture:D6", "--truncation", "40")[1]
    assert a == b == c


def test_quiver_dot_e6(capsys):
    code, out, _ = run(capsys, "quiver", INPUTS / "e6.toml")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("digraph")
    nodes = [l for l in lines if l.strip().endswith('";') and "->" not in l]
    edges = [l for l in lines if "->" in l]
    assert len(nodes) == 2 and len(edges) == 3


def test_quiver_lambda_json(capsys):
    code, out, _ = run(capsys, "quiver", INPUTS / "cuspidal_curve.toml", "--algebra", "Lambda", "--format", "json")
    assert code == 0
    q = json.loads(out)
    assert {"-1_1", "0_1"} <= set(q["vertices"])


def test_order_text_and_json(capsys):
    code, out, _ = run(capsys, "order", "fixture:A4")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "order", "fixture:A4", "--format", "json")
    assert code == 0
    json.loads(out)


def test_check_passes_on_curve(capsys):
    code, out, _ = run(capsys, "check", INPUTS / "two_component_curve.toml")
    assert code == 0
    assert "FAIL" not in out


def test_prime_field_input(capsys):
    code, out, _ = run(capsys, "check", INPUTS / "nodal_cubic_f5.toml")
    assert code == 0


def test_fixtures_list_and_run(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and len(out.strip().splitlines()) == 16
    code, out, _ = run(capsys, "fixtures", "run", "A1", "E6")
    assert code == 0 and out.count("PASS") == 2


def test_out_flag(tmp_path, capsys):
    dest = tmp_path / "q.dot"
    assert run(capsys, "quiver", "fixture:A4", "--out", dest)[0] == 0
    assert dest.read_text().startswith("digraph")


# -- exit codes ---------------------------------------------------------------


def write(tmp_path, text):
    p = tmp_path / "in.toml"
    p.write_text(text)
    return p


def test_exit_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.toml")
    assert code == 2 and "cannot read" in err


def test_exit_duplicate_lambda(capsys, tmp_path):
    text = (INPUTS / "two_component_curve.toml").read_text().replace('lambda = "1"', 'lambda = "0"')
    code, _, err = run(capsys, "check", write(tmp_path, text))
    assert code == 2 and "duplicate lambda" in err and "line" in err


def test_exit_bad_field(capsys):
    code, _, err = run(capsys, "check", INPUTS / "cusp.toml", "--field", "prime:4")
    assert code == 2


def test_exit_small_truncation(capsys):
    code, _, err = run(capsys, "analyze", "fixture:E8", "--truncation", "4")
    assert code == 3 and "--truncation" in err


def test_exit_infinite_colength(capsys, tmp_path):
    text = 'field = "rational"\n[[points]]\nname = "p"\nbranches = 1\ngenerators = [[[[2, 1, 1]]], [[[4, 1, 1]]]]\n'
    code, _, err = run(capsys, "analyze", write(tmp_path, text))
    assert code == 3


def test_env_truncation(capsys, monkeypatch):
    monkeypatch.setenv("KOENIG_TRUNCATION", "4")
    assert run(capsys, "analyze", "fixture:E8")[0] == 3
    monkeypatch.setenv("KOENIG_TRUNCATION", "x")
    assert run(capsys, "analyze", "fixture:E8")[0] == 2


def test_console_script_pure_python():
    env = dict(os.environ, KOENIG_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-m", "koenig.cli", "fixtures", "run", "A3"],
                         env=env, capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout
    res = subprocess.run([sys.executable, "-c", "import koenig; print(koenig.BACKEND)"],
                         env=env, capture_output=True, text=True)
    assert res.stdout.strip() == "python"
