import json
import os
import subprocess
import sys

import pytest

from strongflow.cli import main

PATH3 = "p max 3 2\nn 1 s\nn 3 t\na 1 2 3\na 2 3 5\n"


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.max"
    p.write_text(PATH3)
    return str(p)


def test_solve_prints_value(path_file, capsys, tmp_path):
    metrics = tmp_path / "m.json"
    assert main(["solve", path_file, "--verify", "--check", "--metrics", str(metrics)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "value 3"
    assert "f 1 3" in out and "f 2 3" in out
    rec = json.loads(metrics.read_text())
    assert rec["schema"] == "v1" and rec["value"] == "3"


def test_solve_then_verify(path_file, tmp_path, capsys):
    flow = tmp_path / "path.flow"
    assert main(["solve", path_file, "--flow", str(flow)]) == 0
    assert main(["verify", path_file, str(flow)]) == 0
    flow.write_text("f 1 2\nf 2 2\n")
    assert main(["verify", path_file, str(flow)]) == 4


def test_tree_errors(path_file, tmp_path, capsys):
    assert main(["solve", path_file, "--itco", "treedepth"]) == 2
    tree = tmp_path / "star.tree"
    tree.write_text("t 1 0\nt 2 1\nt 3 1\n")           # 2 and 3 are siblings
    assert main(["solve", path_file, "--itco", "treedepth", "--tree", str(tree)]) == 3
    assert "arc line 2" in capsys.readouterr().err
    tree.write_text("t 1 0\nt 2 1\nt 3 2\n")
    assert main(["solve", path_file, "--itco", "treedepth", "--tree", str(tree)]) == 0


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.max"
    bad.write_text("p max 2 1\nn 1 s\nn 2 t\na 1 2 x\n")
    assert main(["solve", str(bad)]) == 2
    assert "line 4" in capsys.readouterr().err


def test_unbounded_exit_code(tmp_path):
    p = tmp_path / "inf.max"
    p.write_text("p max 3 2\nn 1 s\nn 3 t\na 1 2 *\na 2 3 *\n")
    assert main(["solve", str(p)]) == 5


def run_cli(args, env_seed=None, cwd=None):
    env = dict(os.environ)
    env.pop("STRONGFLOW_SEED", None)
    if env_seed is not None:
        env["STRONGFLOW_SEED"] = str(env_seed)
    return subprocess.run([sys.executable, "-m", "strongflow.cli"] + args, env=env, cwd=cwd,
                          capture_output=True, text=True, check=True)


def test_gen_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_cli(["gen", "layered", "--T", "4", "--width", "3", "--out", str(a)], env_seed=17)
    run_cli(["gen", "layered", "--T", "4", "--width", "3", "--seed", "17", "--out", str(b)])
    for ext in (".max", ".tree"):
        assert (tmp_path / ("a" + ext)).read_bytes() == (tmp_path / ("b" + ext)).read_bytes()
    c = run_cli(["gen", "random", "--n", "9", "--m", "20"], env_seed=3).stdout
    d = run_cli(["gen", "random", "--n", "9", "--m", "20"], env_seed=4).stdout
    assert c != d


def test_bench_writes_one_record_per_run(tmp_path, capsys):
    out = tmp_path / "runs.jsonl"
    assert main(["bench", "--suite", "general", "--backends", "italiano,ordered",
                 "--metrics-out", str(out)]) == 0
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(recs) == 6
    assert {r["backend"] for r in recs} == {"italiano", "ordered"}
    assert all(r["schema"] == "v1" and r["value"] == r["cut_value"] for r in recs)
    assert "6 runs, 0 failed" in capsys.readouterr().out


def test_selftest_and_mutation(capsys):
    assert main(["selftest"]) == 0
    assert main(["selftest", "--mutate-cover"]) == 1
    assert "FAIL cover equivalence [italiano]" in capsys.readouterr().out
