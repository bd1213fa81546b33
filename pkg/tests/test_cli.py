import json
import subprocess
import sys

import pytest

from postlie import catalog, cli, laj
from postlie.exactla import Matrix
from postlie.structures import BilinearProduct


@pytest.fixture
def sl3_files(tmp_path):
    catalog.emit("sl3-inner-structure", tmp_path / "sl3")
    return tmp_path / "sl3"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "sl2|xV")
    assert code == 0
    assert "is_perfect: True" in out and "nilradical: <v1, v2>" in out


def test_check_jacobi_pass_and_fail(capsys, tmp_path):
    assert run(capsys, "check", "jacobi", "sl3-table")[0] == 0
    bad = laj.emit_algebra(catalog.algebra("sl3"))
    bad["brackets"][0]["value"] = {"E11": "1"} if "E11" in bad["basis"] else {bad["basis"][-1]: "1"}
    path = tmp_path / "bad.laj"
    laj.write_document(bad, path)
    code, out, _ = run(capsys, "check", "jacobi", str(path))
    assert code == 4 and "FAIL" in out


def test_check_postlie(capsys, sl3_files):
    code, out, _ = run(capsys, "check", "postlie", "--g", str(sl3_files / "g.laj"), "--n",
                       str(sl3_files / "n.laj"), "--prod", str(sl3_files / "product.lajp"))
    assert code == 0 and out.count("PASS") == 3


def test_check_postlie_fails_with_exit_4(capsys, sl3_files):
    code, out, _ = run(capsys, "check", "postlie", "--g", str(sl3_files / "n.laj"), "--n",
                       str(sl3_files / "n.laj"), "--prod", str(sl3_files / "product.lajp"))
    assert code == 4 and "eq1 (difference): FAIL" in out


def test_check_rb(capsys, sl3_files):
    code, out, _ = run(capsys, "check", "rb", "--n", str(sl3_files / "n.laj"), "--op", str(sl3_files / "phi.lajm"))
    assert code == 0 and "PASS" in out


def test_malformed_input_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.laj"
    path.write_text('{"dim": 2, "basis": ["a", "b"], "brackets": [{"left": "a", "right": "b", "value": {"b": "0.5"}}]}')
    code, _, err = run(capsys, "check", "jacobi", str(path))
    assert code == 2 and "error" in err
    assert run(capsys, "info", "no-such-algebra")[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["check"])
    assert exc.value.code == 2


def test_precondition_exit_3(capsys):
    assert run(capsys, "build", "exp-ad", "--g", "sl2", "--z", "H1")[0] == 3
    assert run(capsys, "build", "from-pair", "--n", "sl2", "--n1", "E12, E21", "--n2", "H1")[0] == 3


def test_transform_prelie_precondition(capsys, sl3_files):
    code, _, err = run(capsys, "transform", "prelie", "--g", str(sl3_files / "g.laj"), "--n",
                       str(sl3_files / "n.laj"), "--prod", str(sl3_files / "product.lajp"))
    assert code == 3 and "2-step nilpotent" in err


def test_parameter_cap_exit_5(capsys):
    assert run(capsys, "search", "postlie", "--g", "abelian3", "--n", "n3", "--param-cap", "2")[0] == 5


def test_build_from_pair_matches_operator(capsys, tmp_path):
    out = tmp_path / "r.lajm"
    code, _, _ = run(capsys, "build", "from-pair", "--n", "sl2-plus-sl2", "--n1", "e1, e3, e4, e6",
                     "--n2", "e2, e3+e5", "-o", str(out))
    assert code == 0
    r = laj.parse_matrix(laj.read_document(out))[2]
    assert r == catalog.get("sl2sl2-rota-baxter").payload["phi"]


def test_build_rb_induced(capsys, tmp_path, sl3_files):
    out, prod_out = tmp_path / "g.laj", tmp_path / "p.lajp"
    code, _, err = run(capsys, "build", "rb-induced", "--n", str(sl3_files / "n.laj"), "--op",
                       str(sl3_files / "phi.lajm"), "--prod-out", str(prod_out), "-o", str(out))
    assert code == 0 and err == ""
    assert laj.load_algebra(out).same_brackets(laj.load_algebra(sl3_files / "g.laj"))


def test_build_direct_sum(capsys):
    code, out, _ = run(capsys, "build", "direct-sum", "sl2", "r2")
    assert code == 0 and json.loads(out)["dim"] == 5


def test_build_semidirect(capsys, tmp_path):
    action = {"basis": ["e1", "e2"], "action": {"x": [["1", "0"], ["0", "1"]]}}
    path = tmp_path / "action.json"
    path.write_text(json.dumps(action))
    acting = tmp_path / "line.laj"
    laj.write_document({"name": "line", "dim": 1, "basis": ["x"], "brackets": []}, acting)
    code, out, _ = run(capsys, "build", "semidirect", "--base", "abelian2", "--acting", str(acting),
                       "--action", str(path))
    assert code == 0 and json.loads(out)["dim"] == 3


def test_build_exp_ad(capsys):
    code, out, _ = run(capsys, "build", "exp-ad", "--g", "sl2|xV", "--z", "v1")
    assert code == 0
    m = laj.parse_matrix(json.loads(out))[2]
    assert m != Matrix.identity(5)


def test_search_postlie_output(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "postlie", "--g", "abelian2", "--n", "r2", "--workers", "1",
                       "--output-dir", str(tmp_path))
    assert code == 0 and "20 solutions" in out
    assert len(list(tmp_path.glob("*.lajp"))) == 20


def test_search_with_support_mask(capsys, tmp_path):
    mask = tmp_path / "mask.json"
    mask.write_text(json.dumps({"support": [["e2", "e1", "e2"]]}))
    code, out, _ = run(capsys, "search", "postlie", "--g", "abelian2", "--n", "r2", "--support-mask", str(mask))
    assert code == 0 and "e2.e1 = e2" in out


def test_search_rb(capsys):
    code, out, _ = run(capsys, "search", "rb", "--n", "r2", "--denominators", "1")
    assert code == 0 and "Rota-Baxter operators of weight 1" in out


def test_report_nonexistence(capsys):
    code, out, _ = run(capsys, "report", "nonexistence", "--g", "gl2", "--n", "n4")
    assert code == 0 and "PROVEN-EMPTY" in out
    code, out, _ = run(capsys, "report", "nonexistence", "--g", "sl2", "--n", "n3")
    assert code == 0 and "GRID-EMPTY(1)" in out
    assert "GRID-EMPTY is evidence only, not a proof of non-existence" in out


def test_catalog_list_and_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "sl3-inner-structure" in out
    code, out, _ = run(capsys, "catalog", "emit", "lr-n3", "-o", str(tmp_path / "lr"))
    assert code == 0 and (tmp_path / "lr" / "fixture.json").exists()
    assert run(capsys, "catalog", "emit", "missing", "-o", str(tmp_path / "x"))[0] == 2


def test_fixture_suite_command(capsys):
    code, out, _ = run(capsys, "paper", "verify", "-v")
    assert code == 0
    total = len(catalog.verify_all())
    assert f"{total}/{total} checks passed" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "postlie", "check", "jacobi", "n4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "PASS" in proc.stdout


def test_prelie_check(capsys, tmp_path):
    prod = BilinearProduct.from_entries(2, {(0, 0): {0: 1}, (0, 1): {1: 1}})
    path = tmp_path / "p.lajp"
    laj.write_document(laj.emit_product(prod, ["E11", "E12"]), path)
    code, out, _ = run(capsys, "check", "prelie", "--g", "aff1", "--prod", str(path))
    assert code == 0, out
