from abc import ABC, abstractmethod
from itertools import combinations
from typing import Iterator, Tuple

import networkx as nx

from hamsat.bench_service.config import BenchConfig
from hamsat.core.graph import Graph, parse_edge_list

THETA_EDGES = """\
a 2 3
c 3 4
d 2 5
e 4 5
f 1 2
g 1 4
"""


class BaseFamily(ABC):
    """Абстрактный базовый класс для семейства графов замера"""

    name = "base"

    def __init__(self, config: BenchConfig):
        """Инициализирует семейство"""
        self.config = config

    @abstractmethod
    def graphs(self) -> Iterator[Tuple[int, Graph]]:
        """Возвращает пары (n, граф) в порядке возрастания n"""
        pass


class CompleteFamily(BaseFamily):
    """Полные графы K_n"""

    name = "complete"

    def graphs(self) -> Iterator[Tuple[int, Graph]]:
        for n in range(self.config.N_MIN, self.config.N_MAX + 1):
            yield n, complete_graph(n)


class ThetaFamily(BaseFamily):
    """Фиксированный тета-граф из трех 4-циклов без гамильтонова цикла"""

    name = "theta"

    def graphs(self) -> Iterator[Tuple[int, Graph]]:
        g = parse_edge_list(THETA_EDGES, vertex_order="natural")
        yield g.n, g


class RandomRegularFamily(BaseFamily):
    """Случайные d-регулярные графы с фиксированным seed"""

    name = "random-regular"

    def graphs(self) -> Iterator[Tuple[int, Graph]]:
        degree = self.config.DEGREE
        for n in range(self.config.N_MIN, self.config.N_MAX + 1):
            # d-регулярный граф на n вершинах существует только при четном n*d
            if n * degree % 2:
                continue
            nx_graph = nx.random_regular_graph(degree, n, seed=self.config.SEED + n)
            pairs = sorted((min(u, v), max(u, v)) for u, v in nx_graph.edges())
            yield n, Graph.from_pairs(n, pairs)


def complete_graph(n: int) -> Graph:
    """Полный граф на вершинах 1..n"""
    return Graph.from_pairs(n, combinations(range(n), 2))


FAMILIES = {
    CompleteFamily.name: CompleteFamily,
    ThetaFamily.name: ThetaFamily,
    RandomRegularFamily.name: RandomRegularFamily,
}


def get_family(config: BenchConfig) -> BaseFamily:
    """Возвращает семейство графов по имени из конфигурации"""
    return FAMILIES[config.FAMILY](config)
