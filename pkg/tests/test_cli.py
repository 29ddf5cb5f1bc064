import json

import pytest

from ncgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_formula_and_numeric_agree(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "dihedral", "--m", "7", "--methods", "formula,numeric")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] is True
    expected = [{"eigenvalue": 0, "multiplicity": 1}, {"eigenvalue": 7, "multiplicity": 5},
                {"eigenvalue": 13, "multiplicity": 7}]
    assert doc["spectra"] == {"formula": expected, "numeric": expected}
    assert doc["formula_source"] == "dihedral"


def test_spectrum_structural_only(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "gl2", "--q", "3", "--methods", "structural")
    assert code == 0
    got = {e["eigenvalue"]: e["multiplicity"] for e in json.loads(out)["spectra"]["structural"]}
    assert got == {0: 1, 40: 15, 42: 12, 44: 6, 46: 12}


def test_spectrum_bad_parameter_is_error(capsys):
    code, _, err = run(capsys, "spectrum", "--family", "dihedral", "--m", "2")
    assert code == 1 and "m >= 3" in err


def test_spectrum_unknown_family_is_usage_error(capsys):
    assert run(capsys, "spectrum", "--family", "nope")[0] == 1
    assert run(capsys, "spectrum", "--spec", "family=nope")[0] == 1
    assert run(capsys, "spectrum")[0] == 1
    assert run(capsys, "spectrum", "--family", "dihedral", "--m", "3", "--tol", "0")[0] == 1
    assert run(capsys, "spectrum", "--family", "dihedral", "--m", "3", "--methods", "magic")[0] == 1


def test_spectrum_disagreement_exit_code(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "psl2", "--k", "2")
    doc = json.loads(out)
    assert code == 2 and doc["spectra"]["formula"] is None
    assert doc["spectra"]["structural"] == doc["spectra"]["numeric"]
    assert any("negative multiplicity" in n for n in doc["notes"])


def test_spectrum_csv_and_text(capsys):
    code, out, _ = run(capsys, "spectrum", "--spec", "family=generalized_quaternion;n=2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "method,eigenvalue,multiplicity"
    assert "numeric,4,3" in lines and "formula,6,2" in lines
    code, out, _ = run(capsys, "spectrum", "--spec", "family=generalized_quaternion;n=2", "--format", "text")
    assert "structural: {0^1, 4^3, 6^2}" in out and "agree: true" in out


def test_spectrum_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "spectrum", "--family", "quasidihedral", "--n", "4", "--out", str(path))[0] == 0
    assert a.read_text() == b.read_text()
    assert json.loads(a.read_text())["spectra"]["numeric"][1] == {"eigenvalue": 8, "multiplicity": 5}


def test_edge_list_export(capsys, tmp_path):
    path = tmp_path / "d6.edges"
    run(capsys, "spectrum", "--family", "dihedral", "--m", "3", "--edges", str(path), "--methods", "structural")
    assert len(path.read_text().splitlines()) == 9


def test_direct_product_flags(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "direct_product", "--base", "dihedral", "--m", "3",
                       "--abelian", "2", "--methods", "formula,structural")
    doc = json.loads(out)
    assert code == 0 and doc["spec"] == "family=direct_product;abelian=2;base=dihedral;m=3"
    assert doc["formula_source"] == "ac_direct_product"


def test_group_info_quaternion(capsys):
    code, out, _ = run(capsys, "group-info", "--family", "generalized_quaternion", "--n", "2")
    doc = json.loads(out)
    assert code == 0
    assert {k: doc[k] for k in ("order", "center", "pr", "centralizers", "ac", "planar", "r", "l_integral")} == {
        "order": 8, "center": 2, "pr": "5/8", "centralizers": 4, "ac": True, "planar": True, "r": 3,
        "l_integral": True}


def test_group_info_psl2(capsys):
    code, out, _ = run(capsys, "group-info", "--family", "psl2", "--k", "2")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 60 and doc["pr"] == "1/12" and doc["solvable"] is False


def test_group_info_abelian_is_error(capsys):
    code, _, err = run(capsys, "group-info", "--spec", "family=abelian_product;orders=2x3")
    assert code == 1 and "no non-commuting graph" in err


def test_verify_grid_file(capsys, tmp_path):
    grid = tmp_path / "grid.txt"
    grid.write_text("# two small groups and PSL(2,4)\nfamily=dihedral;m=5\n\nfamily=psl2;k=2  # A_5\n"
                    "family=frobenius20\n")
    out_path = tmp_path / "reports.json"
    code, out, _ = run(capsys, "verify", "--grid", str(grid), "--out", str(out_path))
    assert code == 0
    assert "statements verified" in out and "1 explained discrepancies" in out
    doc = json.loads(out_path.read_text())
    assert [r["spec"] for r in doc["reports"]] == ["family=dihedral;m=5", "family=frobenius20", "family=psl2;k=2"]
    psl = doc["reports"][2]
    assert len(psl["discrepancies"]["explained"]) == 1 and psl["discrepancies"]["unexplained"] == []


def test_verify_missing_grid_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--grid", str(tmp_path / "missing.txt"))
    assert code == 1 and "missing.txt" in err


def test_verify_runtime_error_exits_1(capsys, tmp_path):
    grid = tmp_path / "grid.txt"
    grid.write_text("family=symmetric;n=4\n")
    code, _, _ = run(capsys, "verify", "--grid", str(grid), "--methods", "structural")
    assert code == 1  # S_4 is not an AC-group: the structural route reports an error


def test_verify_unexplained_disagreement_exits_2(capsys, tmp_path, monkeypatch):
    import dataclasses

    from ncgraph import predictions

    wrong = dataclasses.replace(predictions.STATEMENTS["dihedral"], terms=lambda m: [(0, 1), (m, 2 * m - 2)])
    monkeypatch.setitem(predictions.STATEMENTS, "dihedral", wrong)
    grid = tmp_path / "grid.txt"
    grid.write_text("family=dihedral;m=5\n")
    code, _, err = run(capsys, "verify", "--grid", str(grid))
    assert code == 2 and "1 unexplained" in err


def test_verify_max_order_skips(capsys):
    code, out, err = run(capsys, "verify", "--max-order", "50", "--methods", "formula,structural",
                         "--format", "text")
    assert code == 0
    skipped = [line for line in out.splitlines() if line.startswith("skipped")]
    assert any("family=psl2;k=2" in line for line in skipped)
    assert any("family=gl2;q=4" in line for line in skipped)
    assert "statements verified" in err


def test_verify_csv(capsys, tmp_path):
    grid = tmp_path / "grid.txt"
    grid.write_text("family=dihedral;m=4\n")
    code, out, _ = run(capsys, "verify", "--grid", str(grid), "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "spec,status,source,agrees,explained,note"
    assert "family=dihedral;m=4,ok,dihedral,True,False," in out


@pytest.mark.parametrize("argv", [["--help"], ["spectrum", "--help"]])
def test_help_exits_cleanly(capsys, argv):
    assert main(argv) == 0
