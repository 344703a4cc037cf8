import json
import subprocess
import sys
from pathlib import Path

import pytest

from muoppm.cli import main
from muoppm.cnfsat import read_dimacs, solve_2sat

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, code, first",
    [
        (["verify", "1 4 3 1", "2 4|5 3|5 1|2", "--method", "greedy"], 0, "match"),
        (["verify", "1", "1"], 0, "match"),
        (["verify", "1 2", "5 3|4", "--method", "greedy"], 1, "no-match"),
        (["verify", "1 2|5 3 3", "2 5 3 3", "--method", "oracle"], 0, "match"),
        (["verify", "2 1|3 3", "2 0 3|4", "--method", "eq2"], 0, "match"),
        (["verify", "1 4 3 1", "2 4|5 3|5 1|2", "--method", "lis"], 0, "match"),
    ],
)
def test_verify_verdicts(capsys, argv, code, first):
    got, out, _ = run(capsys, *argv)
    assert got == code
    assert out.splitlines()[0] == first


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "1 2", "1"],
        ["verify", "1|2 3", "1|2 3", "--method", "greedy"],
        ["verify", "1 x", "1 2"],
        ["verify", "1 2"],
        ["search", "1 2 3", "1 2"],
        ["cnf", "1|2 3", "1|2 3", "--encoding", "eq1"],
        ["cnf", "1|2 3", "1|2 3", "--encoding", "alternate"],
    ],
)
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err


@pytest.mark.parametrize(
    "name, argv",
    [
        ("verify_intro.json", ["verify", "1 2|5 3 3", "2 5 3 3", "--json"]),
        ("verify_both_indet.json", ["verify", "2 1|3 3", "2 0 3|4", "--json"]),
        ("search_filtration.json", ["search", "6 2|3 5", "3|4 5 6|8 6|7 3 5 4|6 7|8 4", "--json"]),
        ("oracle_search.json", ["oracle", "1 5 3 3", "5 1 4 2 2 5 2 4", "--json"]),
    ],
)
def test_json_golden(capsys, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / name).read_text())
    assert out == (GOLDEN / name).read_text()


def test_search_text_output(capsys):
    assert run(capsys, "search", "1 5 3 3", "5 1 4 2 2 5 2 4")[:2] == (0, "1\n")
    assert run(capsys, "search", "1 5 3 3", "5 1 4 2 2 5 2 4", "--report", "end")[:2] == (0, "4\n")
    assert run(capsys, "search", "7", "1 2 3")[:2] == (0, "0\n1\n2\n")
    assert run(capsys, "search", "1 2", "3 2 1", "--no-filter")[:2] == (1, "")
    code, out, _ = run(capsys, "search", "1 2|5 3 3", "5 0 1 1|2 2 5 2|3 3|4", "--method", "eq2")
    assert out == "1\n4\n"


def test_search_filter_flag_changes_only_stats(capsys):
    argv = ["search", "3 1 2 4", "2 4 3 5 7 1 4 8", "--json"]
    filtered = json.loads(run(capsys, *argv)[1])
    plain = json.loads(run(capsys, *argv, "--no-filter")[1])
    assert filtered["positions"] == plain["positions"] == [4]
    assert filtered["candidates"] == [1, 4]
    assert plain["stats"]["candidates_after_filter"] == 5


def test_search_text_file_and_comments(capsys, tmp_path):
    f = tmp_path / "t.txt"
    f.write_text("# text split over lines\n5 1 4 2\n\n2 5 2 4\n")
    assert run(capsys, "search", "1 5 3 3", "--text-file", str(f))[:2] == (0, "1\n")
    pf = tmp_path / "p.txt"
    pf.write_text("# pattern\n1 5 3 3\n")
    assert run(capsys, "search", "--pattern-file", str(pf), "--text-file", str(f))[:2] == (0, "1\n")


def test_search_streams_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "muoppm", "search", "1 5 3 3", "--text-file", "-", "--report", "end"],
        input="5 1 4 2\n2 5 2 4\n",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "4\n"


def test_cnf_eq1_small_example(capsys):
    code, out, _ = run(capsys, "cnf", "1 4 3 1", "2 4|5 3|5 1|2", "--encoding", "eq1")
    assert code == 0
    f = read_dimacs(out)
    assert f.num_vars == 7
    assert f.var_meta[1] == "z i=0 y=2"
    assert sorted(map(sorted, f.clauses)) == sorted(
        map(sorted, [(1,), (2, 3), (4, 5), (6, 7), (-5, -2), (-5, -3), (-6, -1)])
    )


def test_cnf_eq2_both_indet_example_at_least_one(capsys):
    code, out, _ = run(capsys, "cnf", "2 1|3 3", "2 0 3|4", "--encoding", "eq2")
    f = read_dimacs(out)
    assert f.clauses[:3] == ((1,), (2, 3), (4, 5))
    assert [f.var_meta[v] for v in range(1, 6)] == [
        "z i=0 x=2 y=2", "z i=1 x=1 y=0", "z i=1 x=3 y=0", "z i=2 x=3 y=3", "z i=2 x=3 y=4",
    ]


def test_cnf_solve_and_out_file(capsys, tmp_path):
    out_file = tmp_path / "f.cnf"
    code, out, _ = run(
        capsys, "cnf", "1 3|7", "2|9 5", "--encoding", "alternate", "--solve", "--out", str(out_file)
    )
    assert code == 0
    assert out.splitlines() == ["result sat", "witness pattern 1 3", "witness text 2 5"]
    assert solve_2sat(read_dimacs(out_file.read_text())).satisfiable
    code, out, _ = run(capsys, "cnf", "1 2", "5 3|4", "--encoding", "eq1", "--solve")
    assert code == 1
    assert out.splitlines()[-1] == "c result unsat"
    assert read_dimacs(out).num_vars == 3


def test_cnf_adjacency_flag(capsys):
    a = run(capsys, "cnf", "1 5 3 2|9", "4|8 2 6 7", "--encoding", "alternate", "--solve")
    b = run(capsys, "cnf", "1 5 3 2|9", "4|8 2 6 7", "--encoding", "alternate", "--solve", "--adjacency")
    assert a[0] == b[0]
    assert len(read_dimacs(b[1]).clauses) <= len(read_dimacs(a[1]).clauses)


def test_reduce_reduction_example_files(capsys, tmp_path):
    prefix = tmp_path / "out"
    code, out, _ = run(capsys, "reduce", str(GOLDEN / "reduction.cnf"), "--out-prefix", str(prefix))
    assert code == 0 and out == ""
    for ext in ("pattern", "text", "json"):
        got = (tmp_path / f"out.{ext}").read_text()
        assert got == (GOLDEN / f"reduction.{ext}").read_text()


def test_reduce_check(capsys, tmp_path):
    unsat = tmp_path / "u.cnf"
    unsat.write_text("p cnf 1 2\n1 0\n-1 0\n")
    code, out, _ = run(capsys, "reduce", str(unsat), "--check")
    assert code == 1 and out.splitlines()[-1] == "no op-match"
    sat = tmp_path / "s.cnf"
    sat.write_text("p cnf 3 2\n1 2 -3 0\n-1 3 0\n")
    code, out, _ = run(capsys, "reduce", str(sat), "--check")
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "op-match"
    val = [int(v) > 0 for v in lines[3].split()[1:]]
    assert (val[0] or val[1] or not val[2]) and (not val[0] or val[2])


def test_reduce_rejects_wide_clause(capsys, tmp_path):
    f = tmp_path / "w.cnf"
    f.write_text("p cnf 4 1\n1 2 3 4 0\n")
    assert run(capsys, "reduce", str(f))[0] == 2


def test_gen_deterministic(capsys):
    argv = ["gen", "--m", "6", "--r-max", "3", "--alphabet", "5", "--seed", "9", "--mode", "alternate"]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and a[0] == 0
    x, y = a[1].splitlines()
    code, out, _ = run(capsys, "verify", x, y)
    code2, out2, _ = run(capsys, "oracle", x, y)
    assert code == code2


def test_oracle_verify_mode(capsys):
    code, out, _ = run(capsys, "oracle", "1 2|5 3 3", "2 5 3 3")
    assert code == 0
    assert out.splitlines()[1:] == ["pattern: 1 5 3 3", "text:    2 5 3 3"]
