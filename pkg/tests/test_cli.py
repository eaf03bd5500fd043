import json
import subprocess
import sys

import pytest

from greenmorita.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_analyze_i2(capsys):
    code, out = run(capsys, "analyze", "--builtin", "symmetric_inverse_monoid", "--params", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["size"] == 7 and rep["idempotents"] == 4
    assert len(rep["atoms"]) == 4


def test_validate_broken_table(capsys, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"n": 2, "mult": [[0, 1], [0, 0]]}))
    code, out = run(capsys, "validate", "--in", str(p))
    rep = json.loads(out)
    assert code == 1
    assert rep["error"] == "NotAssociative" and len(rep["witness"]) == 3


def test_cosets_formats(capsys):
    code, out = run(capsys, "cosets", "--fixture", "FIX1")
    assert code == 0 and json.loads(out)["gh_pairs"] == 17
    code, out = run(capsys, "cosets", "--fixture", "FIX2", "--format", "dot")
    assert out.startswith("digraph")


@pytest.mark.parametrize("side", ["B", "E", "groupoid", "sieben"])
def test_crossed_sides(capsys, side):
    code, out = run(capsys, "crossed", "--fixture", "FIX2", "--side", side)
    assert code == 0
    assert json.loads(out)["blocks"]["blocks"] == [2]


def test_morita_text_and_out(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out = run(capsys, "morita", "--fixture", "FIX2", "--trials", "5",
                    "--out", str(out_path))
    assert code == 0 and "Morita equivalent True" in out
    assert json.loads(out_path.read_text())["blocks_B"] == [2]


def test_induce(capsys):
    code, out = run(capsys, "induce", "--fixture", "IND_C_Z2")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"]["blocks_D_cross_Hp"] == [1, 1]
    assert rep["induced"]["algebra"]["dim"] == 1


def test_induce_from_file(capsys, tmp_path):
    from greenmorita import fixtures
    from greenmorita.io import g_algebra_to_json
    p = tmp_path / "d.json"
    p.write_text(json.dumps(g_algebra_to_json(fixtures.get("IND_C2_SWAP").D)))
    code, out = run(capsys, "induce", "--in", str(p))
    assert code == 0 and json.loads(out)["verdict"]["morita_equivalent"]


def test_suite_single_fixture(capsys):
    code, out = run(capsys, "suite", "--fixture", "FIX2", "--trials", "10")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert rep["fixtures"]["FIX2"]["verdict"]["morita_equivalent"]


def test_unknown_fixture(capsys):
    code, out = run(capsys, "morita", "--fixture", "NOPE")
    assert code == 1 and json.loads(out)["error"] == "KeyError"


def test_bad_flags(capsys):
    assert main(["suite", "--trials", "0"]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "greenmorita", "analyze", "--builtin",
                          "symmetric_inverse_monoid", "--params", "3", "--format", "text"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "size: 34" in res.stdout
