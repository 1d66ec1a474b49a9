import pytest

from perr.cli import main
from perr.graph import Graph
from perr.instances import Instance, dumps_scenario, open_grid_map


@pytest.fixture
def swap2(tmp_path):
    """Two robots on a 2x1 open grid that want to trade places."""
    (tmp_path / "m.map").write_text(open_grid_map(2, 1).dumps())
    (tmp_path / "s.csv").write_text(dumps_scenario(Instance(Graph.path(2), (0, 1), (1, 0))))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_rip_on_a_swap(swap2, capsys):
    code, out, _ = run(capsys, "solve", "--map", swap2 / "m.map", "--scen", swap2 / "s.csv",
                       "--algo", "rip", "--out", swap2 / "plan.csv")
    assert code == 0
    assert (swap2 / "plan.csv").read_text().splitlines() == ["t,robot_0,robot_1", "0,0,1", "1,1,0"]
    assert "makespan=1" in out and "swaps=1" in out


@pytest.mark.parametrize("algo", ["rip", "rip-ic", "bubbletree", "bubbletree2", "oddeven", "oracle"])
def test_every_algorithm_solves_the_swap(swap2, capsys, algo):
    code, out, _ = run(capsys, "solve", "--map", swap2 / "m.map", "--scen", swap2 / "s.csv",
                       "--algo", algo, "--out", swap2 / "p.csv")
    assert code == 0 and "makespan=1" in out


def test_unknown_algorithm_is_a_usage_error(swap2, capsys):
    code, _, err = run(capsys, "solve", "--map", swap2 / "m.map", "--scen", swap2 / "s.csv",
                       "--algo", "astar")
    assert code == 1 and "usage" in err


def test_missing_files_exit_1(tmp_path, capsys):
    code, _, err = run(capsys, "solve", "--map", tmp_path / "nope.map", "--scen", tmp_path / "x.csv")
    assert code == 1 and "cannot load" in err


def test_oracle_over_budget_exits_2(swap2, capsys):
    (swap2 / "big.map").write_text(open_grid_map(3, 3).dumps())
    (swap2 / "big.csv").write_text(dumps_scenario(
        Instance(Graph.grid(3, 3), tuple(range(9)), (8, 7, 6, 5, 4, 3, 2, 1, 0))))
    code, _, err = run(capsys, "oracle", "--map", swap2 / "big.map", "--scen", swap2 / "big.csv",
                       "--budget", 100)
    assert code == 2 and "StateBudgetExceeded" in err


def test_oracle_verb(swap2, capsys):
    code, out, _ = run(capsys, "oracle", "--map", swap2 / "m.map", "--scen", swap2 / "s.csv")
    assert code == 0 and "optimal makespan=1" in out


def test_shearsort_on_a_non_grid_exits_2(swap2, capsys):
    code, _, err = run(capsys, "solve", "--map", swap2 / "m.map", "--scen", swap2 / "s.csv",
                       "--algo", "shearsort")
    assert code == 2 and "NotSquareGrid" in err


def test_validate_verb(swap2, capsys):
    m, s = swap2 / "m.map", swap2 / "s.csv"
    (swap2 / "ok.csv").write_text("t,robot_0,robot_1\n0,0,1\n1,1,0\n")
    assert run(capsys, "validate", "--map", m, "--scen", s, "--plan", swap2 / "ok.csv")[0] == 0
    (swap2 / "short.csv").write_text("t,robot_0,robot_1\n0,0,1\n")
    code, out, _ = run(capsys, "validate", "--map", m, "--scen", s, "--plan", swap2 / "short.csv")
    assert code == 1 and "GoalMismatch" in out


def test_validate_reports_collision_location(tmp_path, capsys):
    (tmp_path / "m.map").write_text(open_grid_map(3, 1).dumps())
    (tmp_path / "s.csv").write_text(dumps_scenario(Instance(Graph.path(3), (0, 2), (2, 0))))
    (tmp_path / "p.csv").write_text("t,robot_0,robot_1\n0,0,2\n1,1,1\n2,2,0\n")
    code, out, _ = run(capsys, "validate", "--map", tmp_path / "m.map", "--scen", tmp_path / "s.csv",
                       "--plan", tmp_path / "p.csv")
    assert code == 1 and "VertexCollision" in out and "t=1" in out


def test_bench_linear_smallest(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert run(capsys, "bench-linear", "--max-n", 1, "--trials", 1, "--algo", "rip", "--out", out)[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "algo,n,k,density,seed,makespan,sic,l,swaps,timesteps,runtime_ms,valid"
    assert len(lines) == 2


@pytest.mark.parametrize("verb,args", [
    ("bench-linear", ["--max-n", 12, "--trials", 2]),
    ("bench-square", ["--max-side", 4, "--trials", 2]),
    ("bench-grid", ["--width", 6, "--height", 5, "--densities", "0,0.1", "--ks", "3,5", "--trials", 2]),
    ("bench-cycle", ["--ns", "16,32"]),
])
def test_bench_csvs_are_byte_identical(tmp_path, capsys, verb, args):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, verb, *args, "--seed", 5, "--out", a)[0] == 0
    assert run(capsys, verb, *args, "--seed", 5, "--jobs", 2, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert all(line.endswith(",True") or "," in line for line in a.read_text().splitlines()[1:])


def test_bench_records_respect_the_rip_bound(tmp_path, capsys):
    import csv
    out = tmp_path / "b.csv"
    run(capsys, "bench-linear", "--max-n", 15, "--trials", 2, "--algo", "rip", "--out", out)
    for r in csv.DictReader(out.open()):
        assert int(r["l"]) <= int(r["makespan"]) <= int(r["k"]) ** 2 + int(r["sic"])
        assert r["valid"] == "True" and r["runtime_ms"] == ""
