"""Неориентированный простой граф, разбор и сериализация списка ребер."""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from hamsat.core.exceptions import ParseError, ValidationError
from hamsat.infra.storage import OutputStorage

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"^[\w.:\-+]+$")

VERTEX_ORDERS = ("appearance", "natural")


@dataclass(frozen=True)
class Edge:
    """Ребро графа, его номер совпадает с номером булевой переменной"""
    index: int
    u: int
    v: int
    label: str

    def other(self, x: int) -> int:
        """Возвращает второй конец ребра"""
        return self.v if x == self.u else self.u


class Graph:
    """Неизменяемый неориентированный граф без петель и кратных ребер"""

    def __init__(self, vertex_labels: Sequence[str], edges: Sequence[Edge]):
        """Инициализирует граф и проверяет инварианты"""
        self._vertex_labels = tuple(vertex_labels)
        self._edges = tuple(edges)
        self._validate()
        adjacency: List[List[Tuple[int, int]]] = [[] for _ in self._vertex_labels]
        for edge in self._edges:
            adjacency[edge.u].append((edge.v, edge.index))
            adjacency[edge.v].append((edge.u, edge.index))
        self._adjacency = tuple(tuple(row) for row in adjacency)
        self._edge_by_label = {edge.label: edge for edge in self._edges}
        self._vertex_by_label = {
            label: i for i, label in enumerate(self._vertex_labels)}

    def _validate(self):
        """Проверяет отсутствие петель, кратных ребер и повторных меток"""
        n = len(self._vertex_labels)
        if len(set(self._vertex_labels)) != n:
            raise ValidationError("duplicate_vertex")
        seen_pairs = set()
        seen_labels = set()
        for position, edge in enumerate(self._edges):
            if edge.index != position:
                raise ValidationError("bad_index", edge.label)
            if not (0 <= edge.u < n and 0 <= edge.v < n):
                raise ValidationError("bad_endpoint", edge.label)
            if edge.u == edge.v:
                raise ValidationError("loop", edge.label)
            if edge.u > edge.v:
                raise ValidationError("unordered", edge.label)
            if (edge.u, edge.v) in seen_pairs:
                raise ValidationError("duplicate_edge", edge.label)
            if edge.label in seen_labels:
                raise ValidationError("duplicate_label", edge.label)
            seen_pairs.add((edge.u, edge.v))
            seen_labels.add(edge.label)

    @classmethod
    def from_pairs(cls,
                   n: int,
                   pairs: Iterable[Tuple[int, int]],
                   vertex_labels: Optional[Sequence[str]] = None,
                   edge_labels: Optional[Sequence[str]] = None) -> "Graph":
        """Строит граф по парам индексов вершин"""
        if vertex_labels is None:
            vertex_labels = [str(i + 1) for i in range(n)]
        edges = []
        for index, (u, v) in enumerate(pairs):
            label = edge_labels[index] if edge_labels is not None else f"e{index}"
            edges.append(Edge(index, min(u, v), max(u, v), label))
        return cls(vertex_labels, edges)

    @property
    def n(self) -> int:
        """Число вершин"""
        return len(self._vertex_labels)

    @property
    def m(self) -> int:
        """Число ребер"""
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def edge_labels(self) -> Tuple[str, ...]:
        return tuple(edge.label for edge in self._edges)

    @property
    def vertex_labels(self) -> Tuple[str, ...]:
        return self._vertex_labels

    @property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Списки смежности: пары (сосед, номер ребра)"""
        return self._adjacency

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def incident_edges(self, v: int) -> Tuple[int, ...]:
        """Номера ребер, инцидентных вершине, по возрастанию"""
        return tuple(sorted(index for _, index in self._adjacency[v]))

    def vertex_label(self, v: int) -> str:
        return self._vertex_labels[v]

    def vertex_index(self, label: str) -> int:
        """Возвращает индекс вершины по ее метке"""
        if label not in self._vertex_by_label:
            raise KeyError(f"Неизвестная вершина '{label}'")
        return self._vertex_by_label[label]

    def edge_label(self, index: int) -> str:
        return self._edges[index].label

    def edge_by_label(self, label: str) -> Edge:
        """Возвращает ребро по метке"""
        if label not in self._edge_by_label:
            raise KeyError(f"Неизвестное ребро '{label}'")
        return self._edge_by_label[label]

    def vertices_of(self, mask: int) -> Tuple[int, ...]:
        """Индексы вершин битовой маски"""
        return tuple(v for v in range(self.n) if mask >> v & 1)

    def format_vertex_set(self, mask: int) -> str:
        labels = (self.vertex_label(v) for v in self.vertices_of(mask))
        return "{" + ",".join(labels) + "}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._vertex_labels == other._vertex_labels
                and self._edges == other._edges)

    def __hash__(self) -> int:
        return hash((self._vertex_labels, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _natural_key(token: str):
    """Ключ сортировки: сначала целые по значению, затем строки"""
    try:
        return (0, int(token), "")
    except ValueError:
        return (1, 0, token)


def parse_edge_list(text: str, vertex_order: str = "appearance") -> Graph:
    """Разбирает список ребер формата `LABEL U V` или `U V`"""
    if vertex_order not in VERTEX_ORDERS:
        raise ValueError(f"Неизвестный порядок вершин '{vertex_order}'")

    records = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) == 2:
            label, u, v = None, tokens[0], tokens[1]
        elif len(tokens) == 3:
            label, u, v = tokens
        else:
            raise ParseError(
                line_no, f"ожидалось 2 или 3 токена, получено {len(tokens)}")
        for token in (label, u, v):
            if token is not None and not _TOKEN_RE.match(token):
                raise ParseError(line_no, f"недопустимый токен '{token}'")
        records.append((line_no, label, u, v))
    if not records:
        raise ValidationError("empty_graph")

    appearance: Dict[str, int] = {}
    for _, _, u, v in records:
        for token in (u, v):
            appearance.setdefault(token, len(appearance))
    if vertex_order == "natural":
        ordered = sorted(appearance, key=_natural_key)
    else:
        ordered = list(appearance)
    index_of = {token: i for i, token in enumerate(ordered)}

    edges = []
    seen_pairs: Dict[Tuple[int, int], int] = {}
    seen_labels: Dict[str, int] = {}
    for position, (line_no, label, u, v) in enumerate(records):
        if u == v:
            raise ValidationError("loop", f"{u} {v}", line_no)
        a, b = sorted((index_of[u], index_of[v]))
        if (a, b) in seen_pairs:
            raise ValidationError(
                "duplicate_edge", f"{u} {v}, см. строку {seen_pairs[(a, b)]}", line_no)
        label = label if label is not None else f"e{position}"
        if label in seen_labels:
            raise ValidationError(
                "duplicate_label", f"'{label}', см. строку {seen_labels[label]}",
                line_no)
        seen_pairs[(a, b)] = line_no
        seen_labels[label] = line_no
        edges.append(Edge(position, a, b, label))

    graph = Graph(ordered, edges)
    logger.debug(f"Parsed graph with n={graph.n}, m={graph.m}")
    return graph


def serialize_edge_list(g: Graph) -> str:
    """Сериализует граф обратно в формат списка ребер"""
    lines = [f"{edge.label} {g.vertex_label(edge.u)} {g.vertex_label(edge.v)}"
             for edge in g.edges]
    return "".join(line + "\n" for line in lines)


def load_graph(path: str, vertex_order: str = "appearance") -> Graph:
    """Загружает граф из файла списка ребер"""
    return parse_edge_list(OutputStorage().read_text(path), vertex_order)


def degree(g: Graph, v: int) -> int:
    """Возвращает степень вершины"""
    return g.degree(v)


def check_min_degree(g: Graph) -> List[int]:
    """Возвращает вершины степени меньше двух"""
    violating = [v for v in range(g.n) if g.degree(v) < 2]
    if violating:
        logger.warning(
            "Vertices with degree < 2: "
            + ", ".join(g.vertex_label(v) for v in violating))
    return violating
