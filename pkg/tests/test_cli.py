import json

from bspace.cli import main


def w(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def test_tree_build_and_norm(tmp_path, capsys):
    tree_path = str(tmp_path / "tree.json")
    assert main(["tree", "build", "--xi", "1", "--nmax", "120",
                 "--out", tree_path]) == 0
    capsys.readouterr()
    vec = w(tmp_path / "vec.json",
            {"coords": [[4, "1"], [5, "1"], [6, "1"], [7, "1"]]})
    assert main(["norm", "--space", "tinc", "--tree", tree_path,
                 "--vec", vec]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"]["exact"] == [[1, "2"]]
    assert out["witness"] is not None

    assert main(["norm", "--space", "jt", "--tree", tree_path, "--vec", vec,
                 "--r", "1", "--p", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"]["exact"] == [[1, "4"]]

    assert main(["norm", "--space", "wg", "--tree", tree_path, "--vec", vec,
                 "--ground", "G0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"]["exact"] == [[1, "2"]]


def test_norm_essinc_toy(tmp_path, capsys):
    vec = w(tmp_path / "vec.json", {"coords": [[2, "1"], [3, "-1/2"]]})
    assert main(["norm", "--space", "essinc", "--vec", vec, "--toy", "6"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"]["exact"]


def test_norm_usage_errors(tmp_path, capsys):
    vec = w(tmp_path / "vec.json", {"coords": [[4, "1"]]})
    assert main(["norm", "--space", "tinc", "--vec", vec]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["norm", "--space", "wg", "--vec", vec, "--tree",
                 str(tmp_path / "missing.json")]) == 2


def test_scc_command(capsys):
    assert main(["scc", "--order", "1", "--eps", "1/2", "--from", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["is_scc"] is True and out["order"] == 1
    # too small an eps: claim failure
    assert main(["scc", "--order", "1", "--eps", "1/100", "--from", "3"]) == 1


def test_plegma_command(capsys):
    assert main(["plegma", "--l", "2", "--k", "2", "--m-set", "1..6"]) == 0
    out = capsys.readouterr().out
    assert "# 70 families" in out
    # strict and too few points to interleave: infeasible
    assert main(["plegma", "--l", "3", "--k", "2", "--m-set",
                 "1,2,3,4,5,9"]) in (0, 3)
    capsys.readouterr()


def test_game_command(capsys):
    assert main(["game", "--n", "4", "--nmax", "120"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["final_nodes"] == [4, 5, 6, 7]
    assert main(["game", "--n", "9", "--p", "2", "--nmax", "600",
                 "--C", "2"]) == 1
    capsys.readouterr()
    assert main(["game", "--n", "40", "--nmax", "120"]) == 3
    assert "551" in capsys.readouterr().err


def test_experiment_command(tmp_path, capsys):
    jpath = tmp_path / "rep.json"
    cpath = tmp_path / "rep.csv"
    assert main(["experiment", "chain-isometry", "--json", str(jpath),
                 "--csv", str(cpath)]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out
    rep = json.loads(jpath.read_text())
    assert rep["passed"] is True and rep["name"] == "chain-isometry"
    assert cpath.read_text().startswith(
        "experiment,claim,provenance,tolerance,observed,passed")
