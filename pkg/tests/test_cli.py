import io
import subprocess
import sys

import pytest

from treesearch.cli import run_cli
from treesearch.strategy import parse_dtree

P421 = "tree 3\nvertex 1 4\nvertex 2 2\nvertex 3 1\nedge 1 2\nedge 2 3\n"
P124 = "tree 3\nvertex 1 1\nvertex 2 2\nvertex 3 4\nedge 1 2\nedge 2 3\n"
CHAIN = "dtree 3 1\ndnode 2 1\ndnode 3 2\n"


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run_cli(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "p421.tw").write_text(P421)
    (tmp_path / "p124.tw").write_text(P124)
    (tmp_path / "chain.dt").write_text(CHAIN)
    return tmp_path


def test_solve_then_eval(files):
    code, out = run(["solve", "--alg", "down", "--in", str(files / "p124.tw"), "--out", str(files / "s.dt")])
    assert code == 0 and out == "cost 6 alg down\n"
    parse_dtree((files / "s.dt").read_text())
    code, out = run(["eval", "--in", str(files / "p124.tw"), "--dtree", str(files / "s.dt")])
    assert (code, out) == (0, "cost 6\n")


@pytest.mark.parametrize("alg", ["auto", "up", "down", "kmono", "exact"])
def test_solve_algorithms_round_trip(files, alg):
    tw = str(files / "p421.tw")
    code, out = run(["solve", "--alg", alg, "--in", tw, "--out", str(files / "o.dt")])
    assert code == 0
    cost = out.split()[1]
    code, out = run(["eval", "--in", tw, "--dtree", str(files / "o.dt")])
    assert out == f"cost {cost}\n"


def test_solve_rank_needs_uniform(files):
    code, _ = run(["solve", "--alg", "rank", "--in", str(files / "p421.tw")])
    assert code == 2
    (files / "u.tw").write_text("tree 3\nvertex 1 1\nvertex 2 1\nvertex 3 1\nedge 1 2\nedge 2 3\n")
    code, out = run(["solve", "--alg", "rank", "--in", str(files / "u.tw")])
    assert code == 0 and out.startswith("dtree 3 2\n")


def test_simulate_target(files):
    code, out = run(["simulate", "--in", str(files / "p421.tw"), "--dtree", str(files / "chain.dt"), "--target", "3"])
    assert code == 0
    assert out.splitlines() == ["query 1 4 toward 2", "query 2 2 toward 3", "query 3 1 found", "total 7"]


def test_simulate_interactive_revalidates(files, monkeypatch):
    answers = "toward 3\ntoward 2\nmaybe\ntoward 1\ntoward 3\nfound\n"
    code, out = run(["simulate", "--in", str(files / "p421.tw"), "--dtree", str(files / "chain.dt"),
                     "--interactive"], answers, monkeypatch)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "query 1 4" and lines[1].startswith("error 3 is not a neighbour")
    assert lines[4].startswith("error expected") and "contradicts" in lines[6]
    assert lines[-2:] == ["found 3", "total 7"]
    queried = [int(x.split()[1]) for x in lines if x.startswith("query")]
    assert set(queried) == {1, 2, 3}


def test_simulate_interactive_eof(files, monkeypatch):
    code, _ = run(["simulate", "--in", str(files / "p421.tw"), "--dtree", str(files / "chain.dt"),
                   "--interactive"], "toward 2\n", monkeypatch)
    assert code == 2


def test_simulate_flags_are_exclusive(files, capsys):
    code, _ = run(["simulate", "--in", str(files / "p421.tw"), "--dtree", str(files / "chain.dt"),
                   "--target", "1", "--interactive"])
    assert code == 2 and "not allowed" in capsys.readouterr().err


def test_classify(files):
    code, out = run(["classify", "--in", str(files / "p421.tw")])
    assert code == 0
    assert out.splitlines() == ["kind up+down", "up-roots 1", "down-roots 3", "k 1 root 1 (greedy)"]


def test_gen_and_verify(files):
    code, out = run(["gen", "--kind", "kmono", "--n", "9", "--seed", "2", "--k", "3"])
    assert code == 0 and out.startswith("tree 9") and "part" in out
    code, out = run(["gen", "--kind", "edge-spider", "--n", "6"])
    assert code == 0 and out.startswith("etree 6")
    code, out = run(["verify", "--kind", "uniform", "--trials", "50", "--nmax", "10", "--seed", "7"])
    assert code == 0 and "violations 0/50" in out
    code, out = run(["verify", "--kind", "down", "--trials", "5", "--nmax", "8", "--rounded", "--lines"])
    assert code == 0 and len(out.splitlines()) == 5


def test_verify_exit_code_on_violation(monkeypatch):
    from treesearch import cli
    from treesearch.harness import CampaignReport, TrialRecord
    from fractions import Fraction

    bad = CampaignReport("up", {}, (TrialRecord(0, 1, 3, 9, 1, Fraction(9), Fraction(8), False),))
    monkeypatch.setattr(cli, "run_campaign", lambda *a, **k: bad)
    code, out = run(["verify", "--kind", "up", "--trials", "1"])
    assert code == 1 and "VIOLATION" in out


@pytest.mark.parametrize("argv", [
    ["eval", "--in", "missing.tw", "--dtree", "x.dt"],
    ["frobnicate"],
    ["solve", "--alg", "magic", "--in", "x"],
])
def test_errors_exit_nonzero(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    assert capsys.readouterr().err


def test_malformed_file_reports_line(files, capsys):
    (files / "bad.tw").write_text("tree 2\nvertex 1 1\nvertex 2 1\nedge 1 7\n")
    code, _ = run(["classify", "--in", str(files / "bad.tw")])
    assert code == 2 and "line 4" in capsys.readouterr().err


def test_dtree_for_wrong_tree(files, capsys):
    (files / "bad.dt").write_text("dtree 3 1\ndnode 3 1\ndnode 2 3\ndnode 2 1\n")
    code, _ = run(["eval", "--in", str(files / "p421.tw"), "--dtree", str(files / "bad.dt")])
    assert code == 2


def test_oracle_cap(files, capsys):
    n = 19
    text = f"tree {n}\n" + "".join(f"vertex {v} 1\n" for v in range(1, n + 1))
    text += "".join(f"edge {v} {v + 1}\n" for v in range(1, n))
    (files / "big.tw").write_text(text)
    code, _ = run(["solve", "--alg", "exact", "--in", str(files / "big.tw")])
    assert code == 2 and "capped" in capsys.readouterr().err


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "treesearch", "eval", "--in", str(files / "p421.tw"),
                          "--dtree", str(files / "chain.dt")], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "cost 7\n"
