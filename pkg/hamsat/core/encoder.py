"""Построение F1, F2 и F = F1 & F2 для задачи о гамильтоновом цикле."""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from hamsat.core.cycles import (
    Cycle,
    crossing_pairs,
    distinct_cycle_vertex_sets,
    enumerate_simple_cycles,
)
from hamsat.core.formula import Block, BlockOrigin, Cube, Formula
from hamsat.core.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssumptionWarning:
    """Нарушение структурного предположения кодирования"""
    kind: str
    vertex: Optional[int] = None
    vertex_mask: Optional[int] = None

    MIN_DEGREE = "min_degree"
    EMPTY_CROSSING = "empty_crossing"

    def message(self, g: Graph) -> str:
        """Текст предупреждения с метками вершин"""
        if self.kind == self.MIN_DEGREE:
            return (f"degree {g.degree(self.vertex)} < 2 at vertex "
                    f"{g.vertex_label(self.vertex)}")
        return f"R(S) is empty for S={g.format_vertex_set(self.vertex_mask)}"


@dataclass(frozen=True)
class EncodingReport:
    """Результат кодирования графа и сводка по нему"""
    formula: Formula
    f1_block_count: int
    f2_block_count: int
    cube_count_total: int
    warnings: Tuple[AssumptionWarning, ...]
    cycle_count: int = 0

    @property
    def f1(self) -> Formula:
        return Formula(self.formula.m, self.formula.blocks[:self.f1_block_count])

    @property
    def f2(self) -> Formula:
        return Formula(self.formula.m, self.formula.blocks[self.f1_block_count:])


def vertex_block(g: Graph, v: int) -> Block:
    """Блок d(v): ровно два инцидентных ребра входят в цикл"""
    incident = g.incident_edges(v)
    cubes = []
    for first, second in combinations(incident, 2):
        negative = [e for e in incident if e not in (first, second)]
        cubes.append(Cube.of((first, second), negative))
    return Block(tuple(cubes), BlockOrigin(BlockOrigin.VERTEX, v))


def build_f1(g: Graph) -> Formula:
    """F1 = d(x1) & ... & d(xn)"""
    return Formula(g.m, tuple(vertex_block(g, v) for v in range(g.n)))


def cycle_block(g: Graph, s: int) -> Block:
    """Блок D(S): хотя бы одна пара из R(S) входит в цикл"""
    if s == g.full_mask:
        raise ValueError("D(S) не определен для S = X")
    cubes = tuple(Cube.of((pair.e1, pair.e2)) for pair in crossing_pairs(g, s))
    return Block(cubes, BlockOrigin(BlockOrigin.CYCLE_SET, s))


def build_f2(g: Graph, cycles: Sequence[Cycle]) -> Formula:
    """F2: по одному блоку на каждое множество вершин негамильтонова цикла"""
    vertex_sets = distinct_cycle_vertex_sets(cycles, non_spanning_only=True)
    return Formula(g.m, tuple(cycle_block(g, s) for s in vertex_sets))


def collect_warnings(formula: Formula) -> Tuple[AssumptionWarning, ...]:
    """Предупреждения для всех блоков-констант 0"""
    warnings = []
    for block in formula.blocks:
        if not block.is_constant_false or block.origin is None:
            continue
        if block.origin.kind == BlockOrigin.VERTEX:
            warnings.append(AssumptionWarning(
                AssumptionWarning.MIN_DEGREE, vertex=block.origin.value))
        else:
            warnings.append(AssumptionWarning(
                AssumptionWarning.EMPTY_CROSSING, vertex_mask=block.origin.value))
    return tuple(warnings)


def build_full(g: Graph,
               max_cycles: Optional[int] = None,
               include_f2: bool = True) -> EncodingReport:
    """Строит F = F1 & F2 и отчет о кодировании"""
    f1 = build_f1(g)
    cycle_count = 0
    f2 = Formula(g.m)
    if include_f2:
        cycles = enumerate_simple_cycles(g, max_cycles)
        cycle_count = len(cycles)
        f2 = build_f2(g, cycles)

    formula = f1.conjoin(f2)
    warnings = collect_warnings(formula)
    for warning in warnings:
        logger.warning(f"Assumption violated: {warning.message(g)}")
    logger.info(f"Encoded graph: {len(f1.blocks)} F1 blocks, "
                f"{len(f2.blocks)} F2 blocks, {formula.cube_count} cubes")
    return EncodingReport(
        formula=formula,
        f1_block_count=len(f1.blocks),
        f2_block_count=len(f2.blocks),
        cube_count_total=formula.cube_count,
        warnings=warnings,
        cycle_count=cycle_count,
    )
