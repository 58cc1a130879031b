import json
from pathlib import Path

import pytest

from hamsat.cli.interface import CLIInterface
from hamsat.core.exceptions import EncodingInvariantError
from hamsat.core.usecases import GraphCheck

from .conftest import FIVE_VERTEX_EDGES, PATH_EDGES, THETA_EDGES

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def cli(monkeypatch):
    monkeypatch.delenv("HAMSAT_SOLVER_PATH", raising=False)
    return CLIInterface()


@pytest.fixture
def write_graph(tmp_path):
    def write(text, name="graph.edges"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_encode_expr(cli, capsys):
    code = cli.run(["encode", str(DATA_DIR / "five_vertex.edges"),
                    "--vertex-order", "natural"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# F1: 5 blocks"
    assert lines[1] == "d(1) = (f & g)"
    assert "D({1,2,3,4}) = (b & d | b & e | d & e)" in lines
    assert "D({2,3,4,5}) = (f & g)" in lines
    assert lines.index("# F2: 5 blocks") == 6


def test_encode_dimacs_to_file(cli, write_graph, tmp_path):
    output = tmp_path / "out" / "five_vertex.cnf"
    code = cli.run(["encode", write_graph(FIVE_VERTEX_EDGES), "--format", "dimacs",
                    "--output", str(output)])
    assert code == 0
    lines = output.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "c edge a -> var 1"
    assert lines[7] == "p cnf 33 100"


def test_solve_all_models(cli, capsys, write_graph):
    code = cli.run(["solve", write_graph(FIVE_VERTEX_EDGES), "--all",
                    "--vertex-order", "natural"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "verdict: satisfiable"
    assert out[1] == "edges: {b,c,d,f,g} cycle: 1-2-5-3-4"
    assert out[2] == "edges: {a,b,e,f,g} cycle: 1-2-3-5-4"
    assert out[3] == "stats:"
    assert "  assignments_tested: 128" in out


def test_solve_unsat_is_success(cli, capsys, write_graph):
    for method in ("brute", "dnf", "lazy"):
        code = cli.run(["solve", write_graph(THETA_EDGES), "--method", method])
        assert code == 0
        assert capsys.readouterr().out.startswith("verdict: unsatisfiable")


def test_solve_json(cli, capsys, write_graph):
    code = cli.run(["solve", write_graph(FIVE_VERTEX_EDGES), "--json",
                    "--vertex-order", "natural", "--method", "lazy"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["schema_version"] == 1
    assert data["verdict"] is True
    assert data["method"] == "lazy"
    assert data["models"][0]["cycle"][0] == "1"
    assert data["stats"]["refinement_rounds"] == 1


def test_solve_external_model_file(cli, capsys, write_graph, tmp_path):
    graph = write_graph(THETA_EDGES)
    model = tmp_path / "model.txt"
    model.write_text("s UNSATISFIABLE\n", encoding="utf-8")
    code = cli.run(["solve", graph, "--method", "external", "--model-file", str(model)])
    assert code == 0
    assert "verdict: unsatisfiable" in capsys.readouterr().out


def test_solve_external_without_solver(cli, capsys, write_graph):
    code = cli.run(["solve", write_graph(FIVE_VERTEX_EDGES), "--method", "external"])
    assert code == 1
    assert "error[USAGE_ERROR]" in capsys.readouterr().err


def test_truncated_model_file(cli, capsys, write_graph, tmp_path):
    model = tmp_path / "model.txt"
    model.write_text("s SATISFIABLE\nv 1 2 3\n", encoding="utf-8")
    code = cli.run(["solve", write_graph(FIVE_VERTEX_EDGES), "--method", "external",
                    "--model-file", str(model)])
    assert code == 1
    assert "error[MODEL_PARSE_ERROR]" in capsys.readouterr().err


def test_parse_error_exit_code(cli, capsys, write_graph):
    assert cli.run(["encode", write_graph("a 1 2 3\n")]) == 1
    assert "error[PARSE_ERROR]" in capsys.readouterr().err
    assert cli.run(["encode", write_graph("x 1 1\n")]) == 1
    assert "error[VALIDATION_ERROR]" in capsys.readouterr().err


def test_missing_file(cli, capsys, tmp_path):
    assert cli.run(["cycles", str(tmp_path / "none.edges")]) == 1
    assert "error[IO_ERROR]" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["solve", "g.edges", "--method", "quantum"],
    ["encode", "g.edges", "--max-cycles", "0"],
    ["encode", "g.edges", "--max-cycles", "many"],
])
def test_usage_errors(cli, capsys, argv):
    assert cli.run(argv) == 1
    assert "error[USAGE_ERROR]" in capsys.readouterr().err


def test_help_exits_zero(cli, capsys):
    assert cli.run(["--help"]) == 0
    assert "encode" in capsys.readouterr().out


def test_cycle_overflow_exit_code(cli, capsys):
    code = cli.run(["bench", "--n-min", "4", "--n-max", "6", "--max-cycles", "100"])
    captured = capsys.readouterr()
    assert code == 3
    assert "error[CYCLE_OVERFLOW]" in captured.err
    assert "37" in captured.out


def test_cycles_listing(cli, capsys, write_graph):
    code = cli.run(["cycles", write_graph(FIVE_VERTEX_EDGES),
                    "--vertex-order", "natural", "--non-spanning"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out == ["2-3-5", "3-4-5", "1-2-3-4", "1-2-5-4", "2-3-4-5", "count: 5"]


def test_strict_assumptions(cli, capsys, write_graph):
    graph = write_graph(PATH_EDGES)
    assert cli.run(["encode", graph]) == 0
    capsys.readouterr()
    assert cli.run(["encode", graph, "--strict-assumptions"]) == 4
    assert "error[ASSUMPTION_VIOLATED]" in capsys.readouterr().err
    assert cli.run(["solve", graph, "--strict-assumptions"]) == 4


def test_verify_single_graph(cli, capsys):
    code = cli.run(["verify", str(DATA_DIR / "two_triangles.edges")])
    out = capsys.readouterr().out
    assert code == 0
    assert "result: PASS" in out


def test_verify_needs_one_source(cli, capsys, write_graph):
    assert cli.run(["verify"]) == 1
    graph = write_graph(FIVE_VERTEX_EDGES)
    assert cli.run(["verify", graph, "--corpus", "random"]) == 1


def test_verify_exhaustive_n5(cli, capsys):
    code = cli.run(["verify", "--corpus", "exhaustive-n5", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["total"] == 728
    assert data["passed"] is True
    assert data["checks"]["hamiltonian"] == {"passed": 728, "total": 728}


def test_bench_table_and_json_agree(cli, capsys):
    assert cli.run(["bench", "--n-min", "4", "--n-max", "6", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [r["cycle_count"] for r in data["records"]] == [7, 37, 197]
    assert data["schema_version"] == 1

    assert cli.run(["bench", "--n-min", "4", "--n-max", "6"]) == 0
    table = capsys.readouterr().out
    for record in data["records"]:
        assert f" {record['f2_block_count']} " in table
        assert f" {record['total_cube_count']} " in table


def test_verification_failure_exit_code(cli, capsys, monkeypatch):
    def broken_check(g, name="graph"):
        return GraphCheck(name, g.n, g.m, checks={"hamiltonian": False, "lazy": True})

    monkeypatch.setattr(cli.verification_manager, "check_graph", broken_check)
    code = cli.run(["verify", str(DATA_DIR / "theta.edges")])
    out = capsys.readouterr().out
    assert code == 2
    assert "FAIL" in out
    assert out.rstrip().endswith("result: FAIL")


def test_internal_invariant_exit_code(cli, capsys, monkeypatch, write_graph):
    def broken_solve(*args, **kwargs):
        raise EncodingInvariantError("модель не задает гамильтонов цикл")

    monkeypatch.setattr(cli.solving_manager, "solve", broken_solve)
    assert cli.run(["solve", write_graph(THETA_EDGES)]) == 2
    assert "error[INTERNAL_INVARIANT]" in capsys.readouterr().err


def test_input_without_edges(cli, capsys, write_graph):
    graph = write_graph("# пустой граф\n")
    for argv in (["solve", graph], ["solve", graph, "--method", "lazy"],
                 ["encode", graph]):
        assert cli.run(argv) == 1
        err = capsys.readouterr().err
        assert "error[VALIDATION_ERROR]" in err
        assert "INTERNAL_INVARIANT" not in err


def test_encode_dimacs_long_cycle(cli, write_graph, tmp_path):
    n = 1500
    text = "".join(f"{i} {i + 1}\n" for i in range(1, n)) + f"{n} 1\n"
    output = tmp_path / "ring.cnf"
    code = cli.run(["encode", write_graph(text), "--format", "dimacs",
                    "--output", str(output)])
    assert code == 0
    header = [line for line in output.read_text(encoding="utf-8").splitlines()
              if line.startswith("p cnf")]
    assert header == [f"p cnf {2 * n} {4 * n}"]
