import logging

import pytest

from hamsat.bench_service.families import complete_graph
from hamsat.core.exceptions import TooManyVariables, UsageError
from hamsat.core.solver import SolveMethod
from hamsat.core.usecases import EncodingManager, SolvingManager, VerificationManager
from hamsat.infra.external_solver import ExternalSolverClient, ExternalSolverConfig


def _actions(caplog):
    return [r for r in caplog.records if r.name == "hamsat.actions"]


def test_encode_is_logged(caplog, five_vertex):
    caplog.set_level(logging.INFO, logger="hamsat.actions")
    report = EncodingManager(source="five_vertex").encode(five_vertex)
    assert report.f2_block_count == 5
    (record,) = _actions(caplog)
    assert record.action == "ENCODE"
    assert record.source == "five_vertex"
    assert record.result == "OK"
    assert "n=5 m=7" in record.extra_info


def test_solve_error_is_logged_and_reraised(caplog):
    caplog.set_level(logging.INFO, logger="hamsat.actions")
    with pytest.raises(TooManyVariables):
        SolvingManager().solve(complete_graph(8), SolveMethod.BRUTE)
    (record,) = _actions(caplog)
    assert record.result == "ERROR"
    assert "error_type=TooManyVariables" in record.extra_info


def test_solve_records_verdict(caplog, theta):
    caplog.set_level(logging.INFO, logger="hamsat.actions")
    result = SolvingManager().solve(theta, SolveMethod.LAZY)
    assert not result.verdict
    assert "verdict=False" in _actions(caplog)[0].extra_info


def test_export_dimacs(five_vertex):
    report, cnf, text = EncodingManager().export_dimacs(five_vertex)
    assert cnf.num_edge_vars == 7
    assert cnf.num_vars == 7 + report.cube_count_total
    assert f"p cnf {cnf.num_vars} {len(cnf.clauses)}" in text


def test_list_cycles(five_vertex):
    manager = EncodingManager()
    assert len(manager.list_cycles(five_vertex)) == 7
    assert len(manager.list_cycles(five_vertex, non_spanning_only=True)) == 5


def test_external_without_solver(five_vertex):
    client = ExternalSolverClient(ExternalSolverConfig(SOLVER_PATH=""))
    with pytest.raises(UsageError):
        SolvingManager(solver_client=client).solve(five_vertex, SolveMethod.EXTERNAL)


def test_external_with_fake_solver(five_vertex):
    class FakeClient(ExternalSolverClient):
        def solve(self, dimacs_text):
            assert dimacs_text.startswith("c edge a -> var 1")
            return "s UNSATISFIABLE\n"

    client = FakeClient(ExternalSolverConfig(SOLVER_PATH="fake"))
    manager = SolvingManager(solver_client=client)
    result = manager.solve(five_vertex, SolveMethod.EXTERNAL)
    assert not result.verdict


def test_check_graph_five_vertex(five_vertex):
    check = VerificationManager().check_graph(five_vertex, "five_vertex")
    assert check.passed
    assert set(check.checks) == {"two_factors", "hamiltonian", "lazy", "dnf"}
    assert (check.hamiltonian_count, check.model_count) == (2, 2)


def test_verify_graph_two_triangles(two_triangles):
    report = VerificationManager().verify_graph(two_triangles, "two_triangles")
    assert report.passed
    assert report.total == 1


def test_verify_random_corpus():
    report = VerificationManager().verify_corpus("random", count=25, seed=9)
    assert report.total == 25
    assert report.passed
    totals = report.check_totals()
    assert totals["two_factors"] == (25, 25)


def test_verify_unknown_corpus():
    with pytest.raises(UsageError):
        VerificationManager().verify_corpus("everything")
