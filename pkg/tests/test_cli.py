from __future__ import annotations

import json
import subprocess
import sys

from wreathcalc.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(argv, capsys):
    code, out, _ = run(["--format", "structured"] + argv, capsys)
    return code, json.loads(out)


def test_enumerate_noncrossing(capsys):
    code, data = structured(["part", "enumerate", "--points", "4", "--noncrossing"], capsys)
    assert code == 0 and data["count"] == 14
    code, data = structured(["part", "enumerate", "--points", "4"], capsys)
    assert data["count"] == 15


def test_bad_literal_exits_2(capsys):
    code, _, err = run(["rep", "gram", "--group", "abelian:4", "--lambda", "5"], capsys)
    assert code == 2 and "not an element" in err


def test_resource_cap_exits_3(capsys):
    p = "upper=1,1,1,1 ; lower=1,1,1,1 ; blocks=[u1][u2][u3][u4][l1][l2][l3][l4]"
    code, _, _ = run(["tp", "--partition", p, "--group", "abelian:2", "--N", "20"], capsys)
    assert code == 0
    code, _, _ = run(["tp", "--partition", p, "--group", "abelian:2", "--N", "20", "--print"], capsys)
    assert code == 3


def test_argparse_errors_exit_2():
    res = subprocess.run([sys.executable, "-m", "wreathcalc", "part", "frobnicate"], capture_output=True)
    assert res.returncode == 2


def test_structured_output_is_deterministic(capsys):
    argv = ["--seed", "3", "rep", "decompose", "--group", "abelian:4", "--lambda", "2", "--max-word-len", "2"]
    _, first = structured(argv, capsys)
    _, second = structured(argv, capsys)
    assert first == second
    labels = [x["label"] for x in first["labels"]]
    assert "OneDim(2)" in labels and "Higher(1 1)" in labels


def test_partition_round_trip_through_cli(capsys):
    text = "upper=1,3 ; lower=1 ; blocks=[u1 l1][u2]"
    code, data = structured(["part", "show", "--group", "abelian:4", "--partition", text], capsys)
    assert code == 0 and data["partition"] == text
    code, data = structured(["part", "rotate", "--group", "abelian:4", "--partition", text,
                             "--direction", "down-left"], capsys)
    assert data["partition"] == "upper=3 ; lower=3,1 ; blocks=[u1][l1 l2]"


def test_partition_file_input(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text("upper=1 ; lower=1,1 ; blocks=[u1 l1 l2]\n")
    code, data = structured(["tp", "--partition", str(f), "--N", "2", "--print"], capsys)
    assert code == 0 and data["matrix"] == [[1, 0], [0, 0], [0, 0], [0, 1]]


def test_fuse_and_dim(capsys):
    base = ["--group", "abelian:4", "--lambda", "2"]
    code, data = structured(["rep", "fuse", "--a", "Higher(1)", "--b", "Higher(1)"] + base, capsys)
    assert data["product"] == "Higher(1 1) + Higher(2) + OneDim(2)"
    code, data = structured(["rep", "dim", "--label", "Higher(1 3)"] + base, capsys)
    assert data["dim"] == 12


def test_classical_and_ext(capsys):
    _, data = structured(["classical", "order", "--k", "4", "--d", "2", "--N", "3"], capsys)
    assert data["order"] == 96
    _, data = structured(["ext", "split", "--group", "abelian:4", "--lambda", "2"], capsys)
    assert data["split"] is False
    _, data = structured(["ext", "criterion", "--group", "abelian:6", "--lambda", "2"], capsys)
    assert data["decomposable"] and data["gamma0"] == ["0", "3"]


def test_category_commands(capsys):
    base = ["--group", "abelian:4", "--lambda", "2"]
    _, data = structured(["cat", "close", "--category", "predicate", "--bound", "4"] + base, capsys)
    assert data["by_size"]["2"] == 4
    _, data = structured(["cat", "member", "--category", "amalgamated",
                          "--partition", "upper=1,1 ; lower=1,1 ; blocks=[u1 u2][l1 l2]"] + base, capsys)
    assert data["membership"] == "in"


def test_verify_glued_example(capsys):
    code, out, _ = run(["verify", "glued", "--group", "abelian:4", "--lambda", "2", "--N", "4",
                        "--max-word-len", "3"], capsys)
    assert code == 0 and "ok: True" in out
