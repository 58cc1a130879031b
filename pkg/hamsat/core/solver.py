"""Решение формулы кодирования и декодирование гамильтоновых циклов."""

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hamsat.core.cycles import canonical_cycle
from hamsat.core.encoder import build_f1, build_full, cycle_block
from hamsat.core.exceptions import (
    EncodingInvariantError,
    ModelInvalid,
    RoundLimitExceeded,
    TooLarge,
    TooManyVariables,
    WidthMismatch,
)
from hamsat.core.formula import (
    Assignment,
    Block,
    Formula,
    cube_models,
    evaluate,
    expand_to_dnf,
    parse_dimacs_model,
    parse_solver_status,
    tseitin_cnf,
)
from hamsat.core.graph import Graph
from hamsat.core.utils import mask_of
from hamsat.infra.settings import SettingsLoader

logger = logging.getLogger(__name__)


class SolveMethod(str, Enum):
    """Способ решения формулы"""
    BRUTE = "brute"
    DNF = "dnf"
    LAZY = "lazy"
    EXTERNAL = "external"


@dataclass
class SolveStats:
    """Счетчики работы решателя"""
    assignments_tested: int = 0
    refinement_rounds: int = 0
    blocks_added: int = 0
    cubes_expanded: int = 0

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class DecodeFailure:
    """Причина, по которой набор не задает гамильтонов цикл"""
    reason: str
    vertex: Optional[int] = None
    degree: Optional[int] = None
    cycles: Tuple[Tuple[int, ...], ...] = ()

    WRONG_DEGREE = "wrong_degree"
    DISJOINT_CYCLES = "disjoint_cycles"

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    def describe(self, g: Graph) -> str:
        if self.reason == self.WRONG_DEGREE:
            return f"wrong degree {self.degree} at vertex {g.vertex_label(self.vertex)}"
        return f"{self.cycle_count} disjoint cycles found"


DecodeOutcome = Union[Tuple[int, ...], DecodeFailure]


@dataclass(frozen=True)
class SolveResult:
    """Вердикт, модели и декодированные циклы"""
    verdict: bool
    models: Tuple[Assignment, ...]
    decoded_cycles: Tuple[Tuple[int, ...], ...]
    stats: SolveStats
    method: SolveMethod

    def __post_init__(self):
        """Проверяет согласованность вердикта и моделей"""
        if self.verdict != bool(self.models):
            raise ValueError("Вердикт не согласован со списком моделей")
        if self.decoded_cycles and len(self.decoded_cycles) != len(self.models):
            raise ValueError("Число циклов не совпадает с числом моделей")


def _settings_cap(value: Optional[int], key: str, default: int) -> int:
    return value if value is not None else SettingsLoader().get(key, default)


def guard_word_size(g: Graph):
    """Точные решатели работают с графами до 64 вершин и 64 ребер"""
    settings = SettingsLoader()
    max_n = settings.get("SOLVER_MAX_VERTICES", 64)
    max_m = settings.get("SOLVER_MAX_EDGES", 64)
    if g.n > max_n:
        raise TooLarge("n", g.n, max_n)
    if g.m > max_m:
        raise TooLarge("m", g.m, max_m)


def decode_cycle(g: Graph, a: Assignment) -> DecodeOutcome:
    """Восстанавливает гамильтонов цикл по положительным ребрам набора"""
    if a.width != g.m:
        raise WidthMismatch(g.m, a.width)

    neighbors: List[List[int]] = [[] for _ in range(g.n)]
    for e in a.positive_edges():
        edge = g.edges[e]
        neighbors[edge.u].append(edge.v)
        neighbors[edge.v].append(edge.u)
    for v in range(g.n):
        if len(neighbors[v]) != 2:
            return DecodeFailure(
                DecodeFailure.WRONG_DEGREE, vertex=v, degree=len(neighbors[v]))

    seen = [False] * g.n
    cycles = []
    for start in range(g.n):
        if seen[start]:
            continue
        walk = [start]
        seen[start] = True
        prev, cur = start, neighbors[start][0]
        while cur != start:
            walk.append(cur)
            seen[cur] = True
            left, right = neighbors[cur]
            prev, cur = cur, (right if left == prev else left)
        cycles.append(canonical_cycle(walk))

    if len(cycles) == 1:
        return cycles[0]
    return DecodeFailure(DecodeFailure.DISJOINT_CYCLES, cycles=tuple(sorted(cycles)))


def _decode_models(g: Graph,
                   models: Sequence[Assignment]) -> Tuple[Tuple[int, ...], ...]:
    """Декодирует модели; отказ означает ошибку кодирования"""
    decoded = []
    for model in models:
        outcome = decode_cycle(g, model)
        if isinstance(outcome, DecodeFailure):
            raise EncodingInvariantError(
                f"Модель {model.format(g.edge_labels)} не задает гамильтонов цикл: "
                f"{outcome.describe(g)}")
        decoded.append(outcome)
    return tuple(decoded)


def _surviving(candidates: np.ndarray, blocks: Sequence[Block]) -> np.ndarray:
    """Оставляет наборы, на которых истинны все блоки"""
    for block in blocks:
        if not candidates.size:
            break
        hit = np.zeros(candidates.shape, dtype=bool)
        for cube in block.cubes:
            positive = np.uint64(cube.positive)
            negative = np.uint64(cube.negative)
            hit |= ((candidates & positive) == positive) & \
                ((candidates & negative) == 0)
        candidates = candidates[hit]
    return candidates


def brute_force_solve(f: Formula,
                      find_all: bool = False,
                      graph: Optional[Graph] = None,
                      max_vars: Optional[int] = None) -> SolveResult:
    """Полный перебор всех 2^m наборов в порядке возрастания"""
    limit = _settings_cap(max_vars, "BRUTE_FORCE_MAX_VARS", 26)
    if f.m > limit:
        raise TooManyVariables(f.m, limit)
    chunk_bits = SettingsLoader().get("BRUTE_FORCE_CHUNK_BITS", 16)

    total = 1 << f.m
    chunk = 1 << min(f.m, chunk_bits)
    stats = SolveStats()
    models: List[Assignment] = []

    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        candidates = np.arange(start, stop, dtype=np.uint64)
        survivors = _surviving(candidates, f.blocks)
        if not find_all and survivors.size:
            first = int(survivors[0])
            models.append(Assignment(f.m, first))
            stats.assignments_tested = first + 1
            break
        models.extend(Assignment(f.m, int(bits)) for bits in survivors.tolist())
        stats.assignments_tested = stop

    decoded = _decode_models(graph, models) if graph is not None else ()
    return SolveResult(bool(models), tuple(models), decoded, stats, SolveMethod.BRUTE)


def solve_with_dnf(g: Graph,
                   f: Formula,
                   find_all: bool = False,
                   max_cubes: Optional[int] = None) -> SolveResult:
    """Решение раскрытием скобок: модели являются доопределениями кубов ДНФ"""
    cubes = expand_to_dnf(f, max_cubes)
    models = sorted({a for cube in cubes for a in cube_models(cube, f.m)},
                    key=lambda a: a.bits)
    if not find_all:
        models = models[:1]
    stats = SolveStats(cubes_expanded=len(cubes))
    return SolveResult(bool(models), tuple(models), _decode_models(g, models),
                       stats, SolveMethod.DNF)


def lazy_refine_solve(g: Graph, max_rounds: Optional[int] = None) -> SolveResult:
    """Решает F1 и добавляет блоки D(S) для найденных подциклов по требованию"""
    max_rounds = _settings_cap(max_rounds, "MAX_ROUNDS", 1000)
    guard_word_size(g)
    stats = SolveStats()
    formula = build_f1(g)
    added = set()

    for round_no in range(1, max_rounds + 1):
        stats.refinement_rounds = round_no
        result = brute_force_solve(formula)
        stats.assignments_tested += result.stats.assignments_tested
        if not result.verdict:
            logger.info(f"Lazy refinement: unsatisfiable in round {round_no}")
            return SolveResult(False, (), (), stats, SolveMethod.LAZY)

        model = result.models[0]
        outcome = decode_cycle(g, model)
        if not isinstance(outcome, DecodeFailure):
            logger.info(f"Lazy refinement: Hamiltonian model in round {round_no}")
            return SolveResult(True, (model,), (outcome,), stats, SolveMethod.LAZY)
        if outcome.reason != DecodeFailure.DISJOINT_CYCLES:
            raise EncodingInvariantError(
                f"Модель F1 не является 2-фактором: {outcome.describe(g)}")

        new_blocks = []
        for sub_cycle in outcome.cycles:
            s = mask_of(sub_cycle)
            if s in added:
                raise EncodingInvariantError(
                    f"Повторный подцикл {g.format_vertex_set(s)} при уточнении")
            added.add(s)
            new_blocks.append(cycle_block(g, s))
        formula = formula.with_blocks(new_blocks)
        stats.blocks_added += len(new_blocks)
        logger.info(f"Lazy refinement round {round_no}: added {len(new_blocks)} blocks")

    raise RoundLimitExceeded(max_rounds, stats)


def solve_via_external(g: Graph,
                       solver_output: str,
                       max_cycles: Optional[int] = None) -> SolveResult:
    """Проверяет и декодирует модель, найденную внешним решателем"""
    report = build_full(g, max_cycles)
    cnf = tseitin_cnf(report.formula, g.edge_labels)
    stats = SolveStats()
    if parse_solver_status(solver_output) is False:
        return SolveResult(False, (), (), stats, SolveMethod.EXTERNAL)

    model = parse_dimacs_model(solver_output, cnf)
    if not evaluate(report.formula, model):
        raise ModelInvalid(
            f"Модель {model.format(g.edge_labels)} не выполняет формулу графа")
    stats.assignments_tested = 1
    return SolveResult(True, (model,), _decode_models(g, [model]), stats,
                       SolveMethod.EXTERNAL)


def solve_graph(g: Graph,
                method: SolveMethod,
                find_all: bool = False,
                max_cycles: Optional[int] = None,
                max_rounds: Optional[int] = None,
                max_cubes: Optional[int] = None,
                solver_output: Optional[str] = None) -> SolveResult:
    """Решает задачу для графа выбранным способом"""
    method = SolveMethod(method)
    if method == SolveMethod.LAZY:
        return lazy_refine_solve(g, max_rounds)
    if method == SolveMethod.EXTERNAL:
        if solver_output is None:
            raise ValueError("Для метода external нужен вывод решателя")
        return solve_via_external(g, solver_output, max_cycles)

    guard_word_size(g)
    report = build_full(g, max_cycles)
    if method == SolveMethod.DNF:
        return solve_with_dnf(g, report.formula, find_all, max_cubes)
    return brute_force_solve(report.formula, find_all, graph=g)
