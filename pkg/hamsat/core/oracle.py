"""Независимые переборные оракулы: гамильтоновы циклы и 2-факторы.

Модуль опирается только на представление графа и не использует
кодировщик или решатель.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

import networkx as nx

from hamsat.core.exceptions import TooLarge
from hamsat.core.graph import Graph
from hamsat.core.utils import validate_probability
from hamsat.infra.settings import SettingsLoader

logger = logging.getLogger(__name__)

LABELED_GRAPHS_MAX_VERTICES = 6


@dataclass(frozen=True)
class HamiltonianCycleSet:
    """Все гамильтоновы циклы графа в канонической форме"""
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class TwoFactor:
    """Остовный подграф степени 2 и его разложение на циклы"""
    edge_indices: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def edge_mask(self) -> int:
        mask = 0
        for e in self.edge_indices:
            mask |= 1 << e
        return mask

    @property
    def is_hamiltonian(self) -> bool:
        return len(self.cycles) == 1


def find_hamiltonian_cycles(g: Graph,
                            max_vertices: Optional[int] = None) -> HamiltonianCycleSet:
    """Перебор с возвратом от вершины 0 без повторов по поворотам и отражениям"""
    if max_vertices is None:
        max_vertices = SettingsLoader().get("ORACLE_MAX_VERTICES", 14)
    if g.n > max_vertices:
        raise TooLarge("n", g.n, max_vertices)
    if g.n < 3:
        return HamiltonianCycleSet(())

    neighbors = [sorted(y for y, _ in row) for row in g.adjacency]
    found: List[Tuple[int, ...]] = []
    path = [0]
    on_path = [False] * g.n
    on_path[0] = True

    def extend():
        last = path[-1]
        if len(path) == g.n:
            if 0 in neighbors[last] and path[1] < path[-1]:
                found.append(tuple(path))
            return
        for y in neighbors[last]:
            if not on_path[y]:
                on_path[y] = True
                path.append(y)
                extend()
                path.pop()
                on_path[y] = False

    extend()
    found.sort()
    logger.debug(f"Oracle found {len(found)} Hamiltonian cycles (n={g.n})")
    return HamiltonianCycleSet(tuple(found))


def _split_cycles(g: Graph,
                  edge_indices: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    """Раскладывает подграф степени 2 на циклы"""
    neighbors: List[List[int]] = [[] for _ in range(g.n)]
    for e in edge_indices:
        edge = g.edges[e]
        neighbors[edge.u].append(edge.v)
        neighbors[edge.v].append(edge.u)

    visited = [False] * g.n
    cycles = []
    for start in range(g.n):
        if visited[start]:
            continue
        walk = [start]
        visited[start] = True
        prev, cur = start, min(neighbors[start])
        while cur != start:
            walk.append(cur)
            visited[cur] = True
            first, second = neighbors[cur]
            prev, cur = cur, (second if first == prev else first)
        cycles.append(tuple(walk))
    return tuple(cycles)


def enumerate_2factors(g: Graph, max_edges: Optional[int] = None) -> List[TwoFactor]:
    """Перебирает подмножества ребер, в которых все степени равны двум"""
    if max_edges is None:
        max_edges = SettingsLoader().get("TWO_FACTOR_MAX_EDGES", 24)
    if g.m > max_edges:
        raise TooLarge("m", g.m, max_edges)

    # в 2-факторе ровно n ребер
    endpoints = [(edge.u, edge.v) for edge in g.edges]
    factors = []
    for subset in combinations(range(g.m), g.n):
        deg = [0] * g.n
        for e in subset:
            u, v = endpoints[e]
            deg[u] += 1
            deg[v] += 1
        if all(d == 2 for d in deg):
            factors.append(TwoFactor(subset, _split_cycles(g, subset)))
    return factors


def _from_networkx(nx_graph: nx.Graph) -> Graph:
    """Переводит граф networkx с вершинами 0..n-1 в Graph"""
    pairs = sorted((min(u, v), max(u, v)) for u, v in nx_graph.edges())
    return Graph.from_pairs(nx_graph.number_of_nodes(), pairs)


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    """Случайный граф G(n, p), детерминированный при фиксированном seed"""
    p = validate_probability(edge_probability)
    return _from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def all_labeled_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Перебирает все помеченные простые графы на n вершинах"""
    if n > LABELED_GRAPHS_MAX_VERTICES:
        raise TooLarge("n", n, LABELED_GRAPHS_MAX_VERTICES)
    slots = list(combinations(range(n), 2))
    for bits in range(1 << len(slots)):
        pairs = [slots[i] for i in range(len(slots)) if bits >> i & 1]
        nx_graph = nx.empty_graph(n)
        nx_graph.add_edges_from(pairs)
        if connected_only and n > 0 and not nx.is_connected(nx_graph):
            continue
        yield _from_networkx(nx_graph)


def random_corpus(count: int,
                  seed: int,
                  min_n: Optional[int] = None,
                  max_n: Optional[int] = None,
                  max_edges: Optional[int] = None,
                  connected_only: bool = False) -> List[Graph]:
    """Воспроизводимый набор случайных графов для проверки эквивалентности"""
    settings = SettingsLoader()
    min_n = min_n if min_n is not None else settings.get("RANDOM_CORPUS_MIN_N", 4)
    max_n = max_n if max_n is not None else settings.get("RANDOM_CORPUS_MAX_N", 8)
    if max_edges is None:
        max_edges = settings.get("RANDOM_CORPUS_MAX_EDGES", 18)

    rng = random.Random(seed)
    corpus: List[Graph] = []
    while len(corpus) < count:
        n = rng.randint(min_n, max_n)
        nx_graph = nx.gnp_random_graph(n, rng.uniform(0.3, 0.9),
                                       seed=rng.randrange(2 ** 32))
        edges = sorted(nx_graph.edges())
        if len(edges) > max_edges:
            nx_graph.remove_edges_from(rng.sample(edges, len(edges) - max_edges))
        if connected_only and not nx.is_connected(nx_graph):
            continue
        corpus.append(_from_networkx(nx_graph))
    logger.info(f"Generated random corpus of {len(corpus)} graphs (seed={seed})")
    return corpus
