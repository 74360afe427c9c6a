import json
import subprocess
import sys

import pytest

from hyperramsey.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, load_shape, main
from hyperramsey.hypergraph import Hypergraph
from hyperramsey.tables import golden_text
from hyperramsey.trees import loose_path
from hyperramsey.witness import TwoColoring


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    manifest = json.loads(err.strip().splitlines()[-1])
    return code, out, manifest


def test_table_matches_golden(capsys):
    code, out, man = run(capsys, "table", "--family", "tree", "--rows", "5..15", "--cols", "4..10")
    assert code == EXIT_OK and out == golden_text("tree")
    assert man["command"] == "table" and man["exit_code"] == 0
    assert set(man) >= {"parameters", "versions", "wall_time", "verdicts"}
    code, out, _ = run(capsys, "bounds", "table", "--family", "path", "--rows", "5..15", "--cols", "4..10")
    assert out == golden_text("path")


def test_table_json_and_csv(capsys):
    code, out, _ = run(capsys, "table", "--rows", "7", "--cols", "7", "--format", "json")
    (cell,) = json.loads(out)
    assert cell["lower"] == cell["upper"] == 19 and cell["status"] == "proven-good"
    code, out, _ = run(capsys, "table", "--rows", "5..7", "--cols", "4", "--format", "csv")
    assert out.splitlines()[0].startswith("family,m,n,r,lower,upper")


def test_cell_provenance(capsys):
    code, out, man = run(capsys, "cell", "-m", "7", "-n", "8", "--family", "path")
    assert code == EXIT_OK
    assert "in 20" in out and "path-7-vs-8" in out and "proven-good" in out
    code, out, _ = run(capsys, "bounds", "cell", "-m", "7", "-n", "4")
    assert "[8, 9]" in out and "open" in out and "inapplicable" in out


def test_output_is_deterministic(capsys):
    outs = [run(capsys, "table", "--rows", "5..31", "--format", "json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["cell", "-m", "7"])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()
    code, _, _ = run(capsys, "table", "--rows", "9..5")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "cell", "-m", "6", "-n", "5")
    assert code == EXIT_USAGE


def test_trees_enum_and_check(capsys, tmp_path):
    code, out, _ = run(capsys, "trees", "enum", "--order", "7", "--uniformity", "3")
    trees = [Hypergraph.from_dict(d) for d in json.loads(out)]
    assert len(trees) == 2
    f = tmp_path / "t.json"
    f.write_text(trees[0].to_json())
    for method in ("build", "acyclic", "components", "unique-path"):
        code, out, _ = run(capsys, "trees", "check", "--input", str(f), "--method", method)
        assert json.loads(out)["tree"] is True
    code, out, _ = run(capsys, "trees", "check", "--input", str(f))
    assert len(json.loads(out)["certificate"]["build_order"]) == 3


def test_invariants(capsys, tmp_path):
    f = tmp_path / "p5.json"
    f.write_text(loose_path(5, 3).to_json())
    code, out, _ = run(capsys, "invariants", "--input", str(f))
    data = json.loads(out)
    assert (data["chi_w"], data["t"], data["c"], data["delta"]) == (2, 1, 5, 1)


def test_witness_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "burr", "--chi-w", "4", "--t", "2", "--c", "7", "--swap")
    c = TwoColoring.from_json(out)
    assert c.order == 19
    f = tmp_path / "w.json"
    f.write_text(out)
    code, out, _ = run(capsys, "witness", "verify", "--coloring", str(f), "--red", "path:7", "--blue-clique", "8")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "clean"
    code, out, _ = run(capsys, "witness", "verify", "--coloring", str(f), "--red", "path:7", "--blue-clique", "7")
    assert code == EXIT_FAIL and json.loads(out)["verdict"] == "blue"


def test_witness_cubic_and_extend(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "cubic", "-j", "2")
    f = tmp_path / "cubic.json"
    f.write_text(out)
    code, out, _ = run(capsys, "witness", "verify", "--coloring", str(f), "--red", "c4", "--blue-clique", "5")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "witness", "extend", "--base", str(f), "-m", "5")
    assert TwoColoring.from_json(out).order == 11
    code, _, _ = run(capsys, "witness", "cubic", "-j", "3")
    assert code == EXIT_USAGE


def test_witness_verify_with_blue_pattern(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "burr", "--chi-w", "2", "--t", "2", "--c", "5")
    f = tmp_path / "b.json"
    f.write_text(out)
    code, out, _ = run(capsys, "witness", "verify", "--coloring", str(f), "--red", "complete:4", "--blue", "path:5")
    assert code == EXIT_OK


def test_arrows_and_ramsey(capsys):
    code, out, man = run(capsys, "arrows", "-p", "5", "--red", "c4", "--blue-clique", "4")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "arrows"
    code, out, _ = run(capsys, "arrows", "-p", "5", "--red", "path:5", "--blue-clique", "4", "--symmetry")
    assert json.loads(out)["verdict"] == "counterexample"
    code, out, _ = run(capsys, "ramsey", "--red", "path:5", "--blue-clique", "4")
    assert code == EXIT_OK and json.loads(out)["value"] == 6


def test_budget_exit_code(capsys):
    code, out, man = run(capsys, "arrows", "-p", "6", "--red", "path:5", "--blue-clique", "4", "--budget", "1")
    assert code == EXIT_BUDGET and json.loads(out)["verdict"] == "budget-exhausted"
    code, out, _ = run(capsys, "ramsey", "--red", "c4", "--blue-clique", "4", "--budget", "1")
    assert code == EXIT_BUDGET


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("RAMSEY_BUDGET", "1")
    code, _, _ = run(capsys, "ramsey", "--red", "c4", "--blue-clique", "4")
    assert code == EXIT_BUDGET


def test_census(capsys):
    code, out, man = run(capsys, "census", "-m", "7", "-n", "5")
    assert code == EXIT_OK
    assert [t["lower"] for t in man["verdicts"][0]["trees"]] == [13, 13]
    code, out, man = run(capsys, "census", "-m", "5", "-n", "4")
    (tree,) = man["verdicts"][0]["trees"]
    assert tree["lower"] == tree["upper"] == 6
    code, out, man = run(capsys, "census", "-m", "7", "-n", "4")
    rows = {t["family"]: (t["lower"], t["upper"]) for t in man["verdicts"][0]["trees"]}
    assert rows == {"path": (8, 8), "tree": (8, 9)}
    code, _, _ = run(capsys, "census", "-m", "11", "-n", "4")
    assert code == EXIT_USAGE


def test_census_search_reports_budget(capsys):
    code, out, man = run(capsys, "census", "-m", "7", "-n", "4", "--search", "--budget", "5")
    assert code == EXIT_BUDGET
    assert "budget exhausted" in out


def test_manifest_file(capsys, tmp_path):
    f = tmp_path / "m.json"
    assert main(["--manifest", str(f), "cell", "-m", "5", "-n", "5"]) == EXIT_OK
    data = json.loads(f.read_text())
    assert data["parameters"]["m"] == 5 and data["verdicts"][0]["lower"] == 9


def test_shape_loader(tmp_path):
    assert load_shape("path:5") == loose_path(5, 3)
    assert load_shape("star:2:4").r == 4
    f = tmp_path / "h.json"
    f.write_text(loose_path(7, 3).to_json())
    assert load_shape(str(f)) == loose_path(7, 3)
    with pytest.raises(Exception):
        load_shape("hexagon")


def test_verify_all_passes(capsys):
    code = main(["verify-all", "--hosts", "100"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.count("[PASS]") == 8


def test_verify_all_names_corrupted_cell(capsys, tmp_path):
    for family in ("tree", "path"):
        (tmp_path / f"{family}_grid.txt").write_text(golden_text(family))
        (tmp_path / f"{family}_grid_symbolic.txt").write_text(golden_text(family, symbolic=True))
    bad = tmp_path / "tree_grid.txt"
    bad.write_text(bad.read_text().replace("| 37 |", "| 38 |"))
    code = main(["verify-all", "--golden-dir", str(tmp_path), "--hosts", "10"])
    out = capsys.readouterr().out
    assert code == EXIT_FAIL
    assert "cell (m=13, n=7): expected 38, got 37" in out


def test_verify_all_budget_is_distinct(capsys):
    code = main(["verify-all", "--budget", "1", "--hosts", "10"])
    out = capsys.readouterr().out
    assert code == EXIT_BUDGET
    assert "[BUDGET] criterion 1" in out and "[FAIL]" not in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperramsey", "cell", "-m", "5", "-n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "in 6" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "hyperramsey", "nope"], capture_output=True, text=True)
    assert proc.returncode == 64


def test_census_search_settles_the_star(capsys):
    code, out, man = run(capsys, "census", "-m", "7", "-n", "4", "--search", "--symmetry")
    assert code == EXIT_OK
    rows = {t["family"]: (t["lower"], t["upper"], t["via"]) for t in man["verdicts"][0]["trees"]}
    assert rows == {"path": (8, 8, "bounds"), "tree": (8, 8, "search")}
    assert "no divergence" in out
