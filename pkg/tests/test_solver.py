import pytest

from hamsat.bench_service.families import complete_graph
from hamsat.core.encoder import build_full
from hamsat.core.exceptions import (
    ModelInvalid,
    ModelParseError,
    RoundLimitExceeded,
    TooLarge,
    TooManyVariables,
    WidthMismatch,
)
from hamsat.core.formula import Assignment, Formula, evaluate
from hamsat.core.graph import Graph
from hamsat.core.solver import (
    DecodeFailure,
    SolveMethod,
    SolveResult,
    SolveStats,
    brute_force_solve,
    decode_cycle,
    guard_word_size,
    lazy_refine_solve,
    solve_graph,
    solve_via_external,
)


def _solver_output(g, edges):
    """Полная модель КНФ для набора ребер, как ее выдал бы SAT-решатель"""
    formula = build_full(g).formula
    a = Assignment.from_edges(g.m, edges)
    lits = [k if a[k - 1] else -k for k in range(1, g.m + 1)]
    var = g.m + 1
    for block in formula.blocks:
        for cube in block.cubes:
            lits.append(var if cube.satisfied_by(a.bits) else -var)
            var += 1
    return "s SATISFIABLE\nv " + " ".join(map(str, lits)) + " 0\n"


def _edges(edge_index, labels):
    return [edge_index[x] for x in labels]


def test_decode_five_vertex_models(five_vertex, edge_index):
    first = decode_cycle(
        five_vertex, Assignment.from_edges(7, _edges(edge_index, "bcdfg")))
    second = decode_cycle(
        five_vertex, Assignment.from_edges(7, _edges(edge_index, "abefg")))
    assert first == (0, 1, 4, 2, 3)
    assert second == (0, 1, 2, 4, 3)


def test_decode_two_triangles(two_triangles):
    outcome = decode_cycle(two_triangles, Assignment(6, 0b111111))
    assert isinstance(outcome, DecodeFailure)
    assert outcome.reason == DecodeFailure.DISJOINT_CYCLES
    assert outcome.cycle_count == 2
    assert outcome.describe(two_triangles) == "2 disjoint cycles found"


def test_decode_wrong_degree(five_vertex):
    outcome = decode_cycle(five_vertex, Assignment(7, 0))
    assert outcome.reason == DecodeFailure.WRONG_DEGREE
    assert (outcome.vertex, outcome.degree) == (0, 0)


def test_decode_width_mismatch(five_vertex):
    with pytest.raises(WidthMismatch):
        decode_cycle(five_vertex, Assignment(3, 0))


def test_constant_true_formula_has_all_models():
    result = brute_force_solve(Formula(2), find_all=True)
    assert [a.bits for a in result.models] == [0, 1, 2, 3]
    assert result.stats.assignments_tested == 4


def test_first_model_is_smallest(five_vertex):
    result = brute_force_solve(build_full(five_vertex).formula, graph=five_vertex)
    assert [a.bits for a in result.models] == [110]
    assert result.stats.assignments_tested == 111
    assert result.method == SolveMethod.BRUTE


def test_brute_force_guard():
    with pytest.raises(TooManyVariables):
        brute_force_solve(Formula(30))
    with pytest.raises(TooManyVariables):
        brute_force_solve(Formula(5), max_vars=4)


def test_solve_result_consistency():
    with pytest.raises(ValueError):
        SolveResult(True, (), (), SolveStats(), SolveMethod.BRUTE)
    with pytest.raises(ValueError):
        SolveResult(False, (Assignment(1, 1),), (), SolveStats(), SolveMethod.BRUTE)


def test_lazy_two_triangles(two_triangles):
    result = lazy_refine_solve(two_triangles)
    assert not result.verdict
    assert result.stats.refinement_rounds == 2
    assert result.stats.blocks_added == 2


def test_lazy_round_limit(two_triangles):
    with pytest.raises(RoundLimitExceeded) as exc:
        lazy_refine_solve(two_triangles, max_rounds=1)
    assert exc.value.stats.blocks_added == 2


def test_lazy_path_unsat_in_first_round(path_graph):
    result = lazy_refine_solve(path_graph)
    assert not result.verdict
    assert result.stats.refinement_rounds == 1


def test_lazy_complete_graph():
    k6 = complete_graph(6)
    result = lazy_refine_solve(k6)
    assert result.verdict
    assert len(result.decoded_cycles[0]) == 6
    assert evaluate(build_full(k6).formula, result.models[0])


def test_external_valid_model(five_vertex, edge_index):
    output = _solver_output(five_vertex, _edges(edge_index, "abefg"))
    result = solve_via_external(five_vertex, output)
    assert result.verdict
    assert result.method == SolveMethod.EXTERNAL
    assert result.decoded_cycles == ((0, 1, 2, 4, 3),)


def test_external_unsat_status(theta):
    result = solve_via_external(theta, "s UNSATISFIABLE\n")
    assert not result.verdict
    assert result.models == ()


def test_external_truncated_model(five_vertex, edge_index):
    output = _solver_output(five_vertex, _edges(edge_index, "abefg"))
    with pytest.raises(ModelParseError):
        solve_via_external(five_vertex, output.replace(" 0\n", "\n"))


def test_external_model_for_other_instance(five_vertex):
    output = _solver_output(five_vertex, range(7))
    with pytest.raises(ModelInvalid):
        solve_via_external(five_vertex, output)


@pytest.mark.parametrize("method", ["brute", "dnf", "lazy"])
def test_solve_graph_methods_agree(five_vertex, theta, method):
    assert solve_graph(five_vertex, method, find_all=True).verdict
    assert not solve_graph(theta, method).verdict


def test_solve_graph_dnf_all_models(five_vertex):
    result = solve_graph(five_vertex, SolveMethod.DNF, find_all=True)
    assert [a.bits for a in result.models] == [110, 115]
    assert result.stats.cubes_expanded == 2


def test_solve_graph_external_needs_output(five_vertex):
    with pytest.raises(ValueError):
        solve_graph(five_vertex, SolveMethod.EXTERNAL)


def test_word_size_guard():
    big = Graph.from_pairs(65, [(i, i + 1) for i in range(64)])
    with pytest.raises(TooLarge):
        guard_word_size(big)
