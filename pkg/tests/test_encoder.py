import pytest

from hamsat.bench_service.families import complete_graph
from hamsat.core.cycles import enumerate_simple_cycles
from hamsat.core.encoder import (
    AssumptionWarning,
    build_f1,
    build_f2,
    build_full,
    cycle_block,
    vertex_block,
)
from hamsat.core.formula import BlockOrigin, Cube
from hamsat.core.graph import parse_edge_list


def test_vertex_block_cube_count_is_pair_count():
    k5 = complete_graph(5)
    for v in range(k5.n):
        block = vertex_block(k5, v)
        assert len(block.cubes) == 6
        assert all(c.size == 4 and bin(c.positive).count("1") == 2
                   for c in block.cubes)
        assert block.origin == BlockOrigin(BlockOrigin.VERTEX, v)


def test_vertex_block_of_degree_two_is_single_cube(triangle):
    assert vertex_block(triangle, 0).cubes == (Cube.of((0, 2)),)


def test_vertex_block_low_degree_is_constant_false(path_graph):
    assert vertex_block(path_graph, 0).is_constant_false
    assert not vertex_block(path_graph, 1).is_constant_false


def test_build_f1_one_block_per_vertex(five_vertex):
    f1 = build_f1(five_vertex)
    assert f1.m == 7
    assert len(f1.blocks) == 5


def test_cycle_block_rejects_full_vertex_set(triangle):
    with pytest.raises(ValueError):
        cycle_block(triangle, triangle.full_mask)


def test_build_f2_skips_spanning_cycles(triangle):
    f2 = build_f2(triangle, enumerate_simple_cycles(triangle))
    assert f2.blocks == ()


def test_two_triangles_get_constant_false_blocks(two_triangles):
    report = build_full(two_triangles)
    assert report.f2_block_count == 2
    assert all(block.is_constant_false for block in report.f2.blocks)
    kinds = {w.kind for w in report.warnings}
    assert kinds == {AssumptionWarning.EMPTY_CROSSING}
    assert report.warnings[0].message(two_triangles) == "R(S) is empty for S={1,2,3}"


def test_min_degree_warning(path_graph):
    report = build_full(path_graph)
    vertices = [w.vertex for w in report.warnings]
    assert vertices == [0, 2]
    assert report.warnings[0].message(path_graph) == "degree 1 < 2 at vertex 1"


def test_build_full_without_f2(five_vertex):
    report = build_full(five_vertex, include_f2=False)
    assert report.f2_block_count == 0
    assert report.cycle_count == 0
    assert report.formula == build_f1(five_vertex)


def test_report_counts(five_vertex):
    report = build_full(five_vertex)
    assert report.f1_block_count == 5
    assert report.f2_block_count == 5
    assert report.cycle_count == 7
    assert report.cube_count_total == 13 + 13
    assert report.f1.conjoin(report.f2) == report.formula
    assert report.warnings == ()


@pytest.mark.parametrize("n,blocks", [(4, 4), (5, 15), (6, 41), (7, 98)])
def test_complete_graph_f2_block_counts(n, blocks):
    assert build_full(complete_graph(n)).f2_block_count == blocks


def test_pendant_vertex_graph():
    g = parse_edge_list("a 1 2\nb 2 3\nc 1 3\nd 3 4\n", vertex_order="natural")
    report = build_full(g)
    kinds = [(w.kind, w.vertex) for w in report.warnings]
    assert kinds == [
        (AssumptionWarning.MIN_DEGREE, 3),
        (AssumptionWarning.EMPTY_CROSSING, None),
    ]
