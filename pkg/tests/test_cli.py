import json
import math
import subprocess
import sys

import numpy as np
import pytest

from twofold.cli import main
from twofold.formats import format_matrix, parse_matrix
from twofold.generators import worked_4x4

from helpers import PART_DECOMP_5, WIELANDT_5, identity


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, M in [("worked", worked_4x4()), ("part", PART_DECOMP_5),
                    ("wielandt", WIELANDT_5), ("identity", identity(3))]:
        p = tmp_path / f"{name}.txt"
        p.write_text(format_matrix(M))
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(files, capsys):
    code, out, _ = run(capsys, "analyze", files["part"])
    doc = json.loads(out)
    assert code == 0 and doc["two_fold"] and not doc["fully_indecomposable"]
    assert not json.loads(run(capsys, "analyze", files["wielandt"])[1])["two_fold"]
    assert not json.loads(run(capsys, "analyze", files["identity"])[1])["irreducible"]


def test_analyze_spectral(files, capsys):
    doc = json.loads(run(capsys, "analyze", files["worked"], "--spectral")[1])
    assert doc["spectral_radius"] == pytest.approx(1.0)
    assert len(doc["perron_vector"]) == 4
    doc = json.loads(run(capsys, "analyze", files["identity"], "--spectral")[1])
    assert doc["perron_vector"] is None


def test_certify(files, capsys):
    code, out, _ = run(capsys, "certify", files["worked"], "--log-alpha", "3", "--levels", "1,-1,2")
    w = json.loads(out)["witness"]
    assert code == 3
    assert w["alpha"] == pytest.approx(math.exp(3))
    np.testing.assert_allclose(w["D"], [1, 5, 2, 6])
    code, out, _ = run(capsys, "certify", files["part"])
    assert code == 0 and json.loads(out)["kind"] == "StrictlyConvex"


def test_witness(files, capsys):
    code, out, _ = run(capsys, "witness", files["wielandt"])
    assert code == 0 and json.loads(out)["similarity_holds"]
    code, _, err = run(capsys, "witness", files["part"])
    assert code == 4 and "two-fold" in err


def test_gap(files, capsys):
    code, out, _ = run(capsys, "gap", files["worked"], "--C", "0,0,0,0", "--D", "1,5,2,6")
    rows = json.loads(out)["gaps"]
    assert code == 0 and len(rows) == 9
    assert max(r["phi"] for r in rows) <= 1e-8
    assert run(capsys, "gap", files["worked"], "--C", "0,0", "--D", "1,5,2,6")[0] == 1


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--family", "wielandt", "--n", "5")
    assert code == 0 and parse_matrix(out) == WIELANDT_5.to_matrix()
    assert parse_matrix(run(capsys, "generate", "--family", "worked_4x4")[1]) == worked_4x4()
    out = run(capsys, "generate", "--family", "cyclic_normal", "--blocks", "2,3", "--json")[1]
    assert json.loads(out)["n"] == 5
    assert run(capsys, "generate", "--family", "wielandt")[0] == 1


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--check", "all")
    assert code == 0 and json.loads(out)["patterns"] == 512
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--check", "property1", "--trials", "2")
    assert code == 0 and json.loads(out)["ok"]
    assert run(capsys, "enumerate", "--n", "5")[0] == 1


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 -1\n0 1\n")
    code, out, err = run(capsys, "analyze", str(bad))
    assert code == 1 and out == "" and "line 2, column 3" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == 1


def test_non_convergence(files, capsys):
    code, _, err = run(capsys, "analyze", files["wielandt"], "--spectral", "--max-iter", "2")
    assert code == 5 and "converge" in err


def test_stdin_module_entry():
    proc = subprocess.run([sys.executable, "-m", "twofold", "certify", "-"],
                          input=format_matrix(worked_4x4()), capture_output=True, text=True)
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["cause"] == "ata_reducible"
