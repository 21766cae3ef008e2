from __future__ import annotations

import io
import json

import pytest

from ncgrowth.cli import run


def call(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    code = run([str(a) for a in argv], stdout=buf)
    return code, buf.getvalue()


def test_gb_leading_word_count(data_dir):
    code, out = call("gb", "--input", data_dir / "A.pres", "--max-degree", 8)
    assert code == 0
    rep = json.loads(out)
    # yz, then x z^j x and x z^j y for j = 0..6
    assert len(rep["payload"]["leading_words"]) == 15
    assert rep["meta"]["order"] == "deglex x > y > z"
    assert rep["meta"]["field"] == "Q"


def test_gb_text_format(data_dir):
    code, out = call("gb", "--input", data_dir / "A.pres", "--max-degree", 3, "--format", "text")
    assert code == 0
    assert out.splitlines()[2:] == ["y*z", "x*y", "x^2 - x*z - 2*z^2", "x*z*y + 2*z^2*y",
                                    "x*z*x - 3*x*z^2 + 2*z^2*x - 2*z^3"]


def test_char_override(data_dir):
    code, out = call("hilbert", "--input", data_dir / "B.pres", "--max-degree", 25, "--char", 2)
    rep = json.loads(out)
    assert code == 0 and rep["meta"]["field"] == "GF(2)"
    assert rep["payload"]["complete"]
    assert rep["payload"]["series"]["formula"]


def test_claims_command_reports_m(data_dir):
    code, out = call("paper", "--algebra", "A", "--char", 5, "--max-degree", 20)
    rep = json.loads(out)
    assert code == 0 and rep["summary"]["pass"]
    assert rep["payload"]["claims"][0]["computed"]["m"] == 4


def test_automaton_and_growth(data_dir, tmp_path):
    code, out = call("automaton", "--patterns", data_dir / "A_char5.patterns", "--alphabet", "x y z",
                     "--max-degree", 10)
    assert code == 0
    assert json.loads(out)["payload"]["counts"]["a"][:7] == [1, 3, 6, 10, 15, 21, 29]
    code, out = call("growth", "--input", data_dir / "B.pres", "--char", 3, "--max-degree", 25,
                     "--figures", tmp_path)
    rep = json.loads(out)
    assert code == 0 and rep["payload"]["growth"]["classification"] == "exponential"
    assert (tmp_path / "growth.png").stat().st_size > 0


def test_verify_exit_codes(data_dir, tmp_path):
    assert call("verify", "--input", data_dir / "B.pres", "--family", data_dir / "B.family",
                "--max-degree", 13)[0] == 0
    bad = tmp_path / "bad.family"
    bad.write_text("y y y\nx x y\n")
    code, out = call("verify", "--input", data_dir / "B.pres", "--family", bad, "--max-degree", 13)
    assert code == 1
    assert json.loads(out)["summary"]["pass"] is False


@pytest.mark.parametrize("text", [
    "generators: x y\nrelations:\n  x*q\n",            # unknown generator
    "generators: x y\nrelations:\n  x*y - x\n",        # inhomogeneous
    "generators: x y\nfield: GF(6)\nrelations: x*y\n",  # non-prime field
    "relations:\n  x*y\n",                            # no generators
])
def test_malformed_inputs_exit_2(tmp_path, text):
    f = tmp_path / "bad.pres"
    f.write_text(text)
    assert call("gb", "--input", f, "--max-degree", 4)[0] == 2


def test_usage_errors_exit_2(data_dir, tmp_path):
    assert call("gb", "--input", tmp_path / "missing.pres", "--max-degree", 8)[0] == 2
    assert call("gb", "--input", data_dir / "A.pres")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("gb", "--input", data_dir / "A.pres", "--max-degree", 8, "--char", 4)[0] == 2
    assert call("paper", "--algebra", "A", "--char", 3)[0] == 2
    gf = tmp_path / "gf.pres"
    gf.write_text("generators: x y\nfield: GF(3)\nrelations: x*y\n")
    assert call("gb", "--input", gf, "--max-degree", 4, "--char", 5)[0] == 2


def test_reports_identical_under_relation_permutation(data_dir, tmp_path):
    lines = (data_dir / "C.pres").read_text().splitlines()
    head, rels = lines[:3], lines[3:]
    permuted = tmp_path / "C_perm.pres"
    permuted.write_text("\n".join(head + rels[::-1]) + "\n")
    for cmd in ("gb", "hilbert"):
        a = call(cmd, "--input", data_dir / "C.pres", "--max-degree", 9)
        b = call(cmd, "--input", permuted, "--max-degree", 9)
        c = call(cmd, "--input", data_dir / "C.pres", "--max-degree", 9)
        assert a == b == c
