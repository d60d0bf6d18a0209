import io
import json
import math
import os

import pytest

from lattice_lel.cli import (
    EXIT_CAPACITY,
    EXIT_NO_CLOSED_FORM,
    EXIT_OUTPUT,
    EXIT_SIZE,
    EXIT_USAGE,
    main,
)
from lattice_lel.graph_core import from_edgelist


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_constant_square():
    code, text = run("constant", "--family", "square")
    assert code == 0 and "h = 1.9162" in text


def test_lel_free_2x2_is_c4(tmp_path):
    p = tmp_path / "lel.json"
    code, text = run("lel", "--family", "square", "--boundary", "free", "--m", "2", "--n", "2", "--out", str(p))
    assert code == 0 and "LEL = 4.8284" in text
    doc = json.loads(p.read_text())
    assert doc["lel"] == pytest.approx(2 + 2 * math.sqrt(2), abs=1e-10)
    assert doc["lower_bound"] <= doc["lel"] <= doc["upper_bound"]


def test_audit_j312(tmp_path):
    p = tmp_path / "audit.json"
    code, text = run("audit", "--family", "j312", "--m", "4", "--n", "4", "--out", str(p))
    assert code == 0
    assert "/ 2" in text
    sec = json.loads(p.read_text())["j312"]
    assert sec["candidate_deviations"]["divide_by_2"] <= 1e-8


def test_build_edgelist(tmp_path):
    p = tmp_path / "g.txt"
    code, _ = run("build", "--family", "hex", "--m", "3", "--n", "3", "--out", str(p))
    assert code == 0
    g = from_edgelist(p.read_text())
    assert (g.n_vertices, g.n_edges) == (32, 48)


def test_spectrum_both(tmp_path):
    p = tmp_path / "s.csv"
    code, text = run("spectrum", "--family", "m3342", "--m", "3", "--n", "4", "--source", "both", "--out", str(p))
    assert code == 0 and "pass" in text
    lines = p.read_text().splitlines()
    assert lines[0] == "index,closed_form,numeric,abs_diff" and len(lines) == 25


def test_converge_formats(tmp_path):
    for fmt in ("csv", "json", "gnuplot"):
        p = tmp_path / f"c.{fmt}"
        code, _ = run("converge", "--sizes", "4,6", "--boundaries", "torus,free", "--format", fmt, "--out", str(p))
        assert code == 0 and p.stat().st_size > 0


def test_kdim_and_perturb():
    code, text = run("kdim", "--k", "1")
    assert code == 0 and "1.2732" in text
    code, text = run("perturb", "--trials", "10", "--seed", "5")
    assert code == 0 and "0 violations" in text


@pytest.mark.parametrize("argv,status,needle", [
    (["lel", "--family", "kagome"], EXIT_USAGE, "unknown family"),
    (["lel", "--boundary", "mobius"], EXIT_USAGE, "unknown boundary"),
    (["lel", "--family", "hex", "--m", "1", "--n", "1"], EXIT_SIZE, "invalid size"),
    (["constant", "--grid", "100"], EXIT_SIZE, "invalid grid"),
    (["spectrum", "--family", "tkl", "--boundary", "cyl"], EXIT_NO_CLOSED_FORM, "no closed-form"),
    (["spectrum", "--family", "hex", "--m", "20", "--n", "20", "--source", "numeric", "--cap", "50"],
     EXIT_CAPACITY, "capacity"),
    (["lel", "--format", "edgelist"], EXIT_USAGE, "format"),
    (["lel", "--out", "/nonexistent-dir/x.json"], EXIT_OUTPUT, "does not exist"),
    (["converge", "--sizes", "4,abc"], EXIT_USAGE, "cannot parse"),
])
def test_errors(argv, status, needle, capsys):
    code, _ = run(*argv)
    assert code == status
    assert needle in capsys.readouterr().err


def test_unknown_command():
    assert run("frobnicate")[0] == EXIT_USAGE


def test_out_path_is_directory(tmp_path, capsys):
    code, _ = run("lel", "--out", str(tmp_path))
    assert code == EXIT_OUTPUT and "not writable" in capsys.readouterr().err


def test_atomic_write_leaves_no_temp(tmp_path):
    p = tmp_path / "x.json"
    run("lel", "--out", str(p))
    assert os.listdir(tmp_path) == ["x.json"]


def test_byte_identical_reruns(tmp_path):
    for cmd in (["perturb", "--trials", "8", "--seed", "11", "--format", "csv"],
                ["spectrum", "--family", "hex", "--m", "2", "--n", "2", "--source", "numeric"],
                ["audit", "--family", "m3342"]):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(*cmd, "--out", str(a))[0] == 0
        assert run(*cmd, "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()
