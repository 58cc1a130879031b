"""Перечисление простых циклов и граничные структуры E(S), R(S)."""

import logging
from dataclasses import dataclass
from math import comb, factorial
from typing import FrozenSet, List, Optional, Sequence, Tuple

from hamsat.core.exceptions import CycleOverflow
from hamsat.core.graph import Graph
from hamsat.core.utils import popcount
from hamsat.infra.settings import SettingsLoader

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cycle:
    """Простой цикл в канонической форме"""
    vertices: Tuple[int, ...]
    vertex_mask: int
    edge_indices: Tuple[int, ...]
    spanning: bool

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    def format(self, g: Graph) -> str:
        """Возвращает цикл в виде `v0-v1-...` с метками вершин"""
        return "-".join(g.vertex_label(v) for v in self.vertices)


@dataclass(frozen=True)
class BoundaryPair:
    """Пара граничных ребер без общей вершины внутри S"""
    e1: int
    e2: int
    a1: int
    a2: int


def canonical_cycle(sequence: Sequence[int]) -> Tuple[int, ...]:
    """Приводит замкнутый обход к канонической форме.

    Обход начинается с минимальной вершины и идет в сторону
    меньшего из двух ее соседей по циклу.
    """
    k = len(sequence)
    start = min(range(k), key=lambda i: sequence[i])
    forward = [sequence[(start + i) % k] for i in range(k)]
    backward = [forward[0]] + forward[1:][::-1]
    return tuple(forward if forward[1] < forward[-1] else backward)


def _make_cycle(path: List[int], path_edges: List[int], n: int) -> Cycle:
    """Создает объект цикла по пути и замыкающему ребру"""
    mask = 0
    for v in path:
        mask |= 1 << v
    return Cycle(tuple(path), mask, tuple(path_edges), len(path) == n)


def enumerate_simple_cycles(g: Graph, max_cycles: Optional[int] = None) -> List[Cycle]:
    """Перечисляет все простые циклы графа ровно по одному разу"""
    if max_cycles is None:
        max_cycles = SettingsLoader().get("MAX_CYCLES", 1_000_000)

    cycles: List[Cycle] = []
    adjacency = g.adjacency

    for root in range(g.n):
        path = [root]
        path_edges: List[int] = []
        visited = 1 << root
        frames = [iter(adjacency[root])]
        while frames:
            step = next(frames[-1], None)
            if step is None:
                frames.pop()
                if path_edges:
                    visited &= ~(1 << path.pop())
                    path_edges.pop()
                continue
            y, e = step
            if y == root:
                # цикл встречается в обоих направлениях
                if len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(_make_cycle(path, path_edges + [e], g.n))
                    if len(cycles) > max_cycles:
                        raise CycleOverflow(max_cycles)
            elif y > root and not visited >> y & 1:
                path.append(y)
                path_edges.append(e)
                visited |= 1 << y
                frames.append(iter(adjacency[y]))

    cycles.sort(key=lambda c: (len(c.vertices), c.vertices))
    logger.info(f"Enumerated {len(cycles)} simple cycles (n={g.n}, m={g.m})")
    return cycles


def boundary_edges(g: Graph, s: int) -> Tuple[int, ...]:
    """Возвращает E(S): ребра ровно с одним концом в S"""
    return tuple(edge.index for edge in g.edges
                 if (s >> edge.u & 1) != (s >> edge.v & 1))


def _inside_endpoint(g: Graph, edge_index: int, s: int) -> int:
    edge = g.edges[edge_index]
    return edge.u if s >> edge.u & 1 else edge.v


def crossing_pairs(g: Graph, s: int) -> List[BoundaryPair]:
    """Возвращает R(S): пары граничных ребер с разными концами в S"""
    boundary = boundary_edges(g, s)
    inside = [_inside_endpoint(g, e, s) for e in boundary]
    pairs = []
    for i in range(len(boundary)):
        for j in range(i + 1, len(boundary)):
            if inside[i] != inside[j]:
                pairs.append(
                    BoundaryPair(boundary[i], boundary[j], inside[i], inside[j]))
    return pairs


def distinct_cycle_vertex_sets(cycles: Sequence[Cycle],
                               non_spanning_only: bool = False) -> List[int]:
    """Возвращает различные множества вершин циклов в виде битовых масок"""
    masks = {c.vertex_mask for c in cycles if not (non_spanning_only and c.spanning)}
    return sorted(masks, key=lambda mask: (popcount(mask), mask))


def closed_form_cycle_count(n: int) -> int:
    """Число простых циклов полного графа K_n"""
    return sum(comb(n, k) * factorial(k - 1) // 2 for k in range(3, n + 1))
