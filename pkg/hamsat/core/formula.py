"""Формулы вида «конъюнкция дизъюнкций элементарных конъюнкций».

Куб хранится как две битовые маски (положительные и отрицательные
литералы), поэтому поглощение сводится к двум проверкам вложенности.
Пустой блок означает константу 0, отсутствие блоков означает константу 1.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from hamsat.core.exceptions import (
    ExpansionOverflow,
    ModelParseError,
    VarOutOfRange,
    WidthMismatch,
)
from hamsat.core.utils import iter_bits, mask_of, popcount
from hamsat.infra.settings import SettingsLoader

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Literal:
    """Литерал: переменная ребра или ее отрицание"""
    edge: int
    positive: bool = True

    def format(self, labels: Sequence[str]) -> str:
        name = labels[self.edge]
        return name if self.positive else f"~{name}"


@dataclass(frozen=True)
class Cube:
    """Элементарная конъюнкция без противоположных литералов"""
    positive: int = 0
    negative: int = 0

    def __post_init__(self):
        """Проверяет отсутствие противоположных литералов"""
        if self.positive & self.negative:
            raise ValueError("Куб содержит противоположные литералы")

    @classmethod
    def of(cls, positive: Iterable[int] = (), negative: Iterable[int] = ()) -> "Cube":
        """Создает куб по номерам положительных и отрицательных переменных"""
        return cls(mask_of(positive), mask_of(negative))

    @classmethod
    def from_literals(cls, literals: Iterable[Literal]) -> "Cube":
        literals = list(literals)
        return cls.of([lit.edge for lit in literals if lit.positive],
                      [lit.edge for lit in literals if not lit.positive])

    @property
    def literals(self) -> Tuple[Literal, ...]:
        """Литералы куба в порядке номеров переменных"""
        result = [Literal(e, True) for e in iter_bits(self.positive)]
        result += [Literal(e, False) for e in iter_bits(self.negative)]
        return tuple(sorted(result))

    @property
    def size(self) -> int:
        return popcount(self.positive) + popcount(self.negative)

    @property
    def variables(self) -> int:
        return self.positive | self.negative

    def conjoin(self, other: "Cube") -> Optional["Cube"]:
        """Конъюнкция двух кубов, None для противоречивого результата"""
        positive = self.positive | other.positive
        negative = self.negative | other.negative
        if positive & negative:
            return None
        return Cube(positive, negative)

    def absorbs(self, other: "Cube") -> bool:
        """Истина, если литералы self составляют подмножество литералов other"""
        return (self.positive & ~other.positive) == 0 and \
            (self.negative & ~other.negative) == 0

    def satisfied_by(self, bits: int) -> bool:
        return (bits & self.positive) == self.positive and not bits & self.negative

    def sort_key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((lit.edge, 0 if lit.positive else 1) for lit in self.literals)

    def format(self, labels: Sequence[str]) -> str:
        if not self.size:
            return "1"
        return " & ".join(lit.format(labels) for lit in self.literals)


TRUE_CUBE = Cube()


@dataclass(frozen=True)
class BlockOrigin:
    """Происхождение блока: вершина или множество вершин цикла"""
    kind: str
    value: int

    VERTEX = "vertex"
    CYCLE_SET = "cycle_set"


@dataclass(frozen=True)
class Block:
    """Дизъюнкция кубов; пустой список кубов означает константу 0"""
    cubes: Tuple[Cube, ...]
    origin: Optional[BlockOrigin] = None

    def __post_init__(self):
        """Удаляет повторные кубы с сохранением порядка"""
        object.__setattr__(self, "cubes", tuple(dict.fromkeys(self.cubes)))

    @property
    def is_constant_false(self) -> bool:
        return not self.cubes

    def satisfied_by(self, bits: int) -> bool:
        return any(cube.satisfied_by(bits) for cube in self.cubes)

    def format(self, labels: Sequence[str]) -> str:
        if not self.cubes:
            return "(0)"
        return "(" + " | ".join(cube.format(labels) for cube in self.cubes) + ")"


@dataclass(frozen=True)
class Formula:
    """Конъюнкция блоков над m переменными ребер"""
    m: int
    blocks: Tuple[Block, ...] = field(default_factory=tuple)

    def __post_init__(self):
        """Проверяет, что все переменные лежат в диапазоне 0..m-1"""
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for block in self.blocks:
            for cube in block.cubes:
                if cube.variables >> self.m:
                    raise ValueError(
                        f"Литерал вне диапазона переменных 0..{self.m - 1}")

    def conjoin(self, other: "Formula") -> "Formula":
        """Конъюнкция формул с сохранением порядка блоков"""
        if other.m != self.m:
            raise WidthMismatch(self.m, other.m)
        return Formula(self.m, self.blocks + other.blocks)

    def with_blocks(self, blocks: Iterable[Block]) -> "Formula":
        return Formula(self.m, self.blocks + tuple(blocks))

    @property
    def cube_count(self) -> int:
        return sum(len(block.cubes) for block in self.blocks)

    def format(self, labels: Sequence[str]) -> str:
        if not self.blocks:
            return "1"
        return " & ".join(block.format(labels) for block in self.blocks)


@dataclass(frozen=True)
class Assignment:
    """Полный набор значений m переменных ребер, бит i хранит значение ребра i"""
    width: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError("Набор шире числа переменных")

    @classmethod
    def from_edges(cls, width: int, edges: Iterable[int]) -> "Assignment":
        return cls(width, mask_of(edges))

    def __getitem__(self, edge: int) -> bool:
        return bool(self.bits >> edge & 1)

    def positive_edges(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def format(self, labels: Sequence[str]) -> str:
        return "{" + ",".join(labels[e] for e in self.positive_edges()) + "}"


@dataclass(frozen=True)
class CnfInstance:
    """КНФ: сначала переменные ребер 1..m, затем вспомогательные"""
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]
    edge_labels: Tuple[str, ...]

    def __post_init__(self):
        """Проверяет отсутствие противоположных литералов в дизъюнктах"""
        object.__setattr__(
            self, "clauses", tuple(tuple(clause) for clause in self.clauses))
        object.__setattr__(self, "edge_labels", tuple(self.edge_labels))
        for clause in self.clauses:
            if len({abs(lit) for lit in clause}) != len(set(clause)):
                raise ValueError("Дизъюнкт содержит противоположные литералы")

    @property
    def num_edge_vars(self) -> int:
        return len(self.edge_labels)

    @property
    def edge_var_map(self) -> Dict[int, int]:
        """Соответствие номер ребра -> переменная CNF"""
        return {i: i + 1 for i in range(self.num_edge_vars)}

    def edge_var(self, edge: int) -> int:
        return edge + 1

    def var_edge(self, var: int) -> Optional[int]:
        """Номер ребра для переменной CNF или None для вспомогательной"""
        return var - 1 if 1 <= var <= self.num_edge_vars else None


def _check_width(f: Formula, a: Assignment):
    if a.width != f.m:
        raise WidthMismatch(f.m, a.width)


def evaluate(f: Formula, a: Assignment) -> bool:
    """Вычисляет значение формулы на наборе"""
    _check_width(f, a)
    return all(block.satisfied_by(a.bits) for block in f.blocks)


def absorb(cubes: Iterable[Cube]) -> List[Cube]:
    """Удаляет кубы, поглощаемые другими кубами (X | XY = X)"""
    unique = sorted(set(cubes), key=lambda c: (c.size, c.sort_key()))
    kept: List[Cube] = []
    for cube in unique:
        if not any(k.absorbs(cube) for k in kept):
            kept.append(cube)
    return kept


def expand_to_dnf(f: Formula, max_cubes: Optional[int] = None) -> List[Cube]:
    """Раскрывает скобки с поглощением после каждого блока"""
    if max_cubes is None:
        max_cubes = SettingsLoader().get("MAX_CUBES", 1_000_000)

    current = [TRUE_CUBE]
    for block_index, block in enumerate(f.blocks):
        product = []
        for left in current:
            for right in block.cubes:
                cube = left.conjoin(right)
                if cube is None:
                    continue
                product.append(cube)
                if len(product) > max_cubes:
                    raise ExpansionOverflow(max_cubes, block_index)
        current = absorb(product)
        if not current:
            logger.info(f"DNF expansion hit constant 0 at block {block_index}")
            return []
    return sorted(current, key=Cube.sort_key)


def cube_models(cube: Cube, m: int) -> List[Assignment]:
    """Все полные наборы, на которых куб истинен, по возрастанию"""
    free = [e for e in range(m) if not cube.variables >> e & 1]
    result = []
    for combo in range(1 << len(free)):
        bits = cube.positive
        for i, e in enumerate(free):
            if combo >> i & 1:
                bits |= 1 << e
        result.append(Assignment(m, bits))
    return sorted(result, key=lambda a: a.bits)


def tseitin_cnf(f: Formula, edge_labels: Optional[Sequence[str]] = None) -> CnfInstance:
    """Строит равновыполнимую КНФ с одной вспомогательной переменной на куб"""
    if edge_labels is None:
        edge_labels = [f"y{i}" for i in range(f.m)]
    clauses: List[Tuple[int, ...]] = []
    next_var = f.m + 1

    for block in f.blocks:
        if block.is_constant_false:
            clauses.append(())
            continue
        block_vars = []
        for cube in block.cubes:
            aux = next_var
            next_var += 1
            block_vars.append(aux)
            lits = [lit.edge + 1 if lit.positive else -(lit.edge + 1)
                    for lit in cube.literals]
            # aux влечет каждый литерал куба
            for lit in lits:
                clauses.append((-aux, lit))
            # куб влечет aux
            clauses.append(tuple(-lit for lit in lits) + (aux,))
        clauses.append(tuple(block_vars))

    cnf = CnfInstance(next_var - 1, tuple(clauses), tuple(edge_labels))
    logger.info(f"Tseitin CNF: {cnf.num_vars} vars, {len(cnf.clauses)} clauses")
    return cnf


def write_dimacs(c: CnfInstance) -> str:
    """Сериализует КНФ в формат DIMACS"""
    lines = [f"c edge {label} -> var {c.edge_var(i)}"
             for i, label in enumerate(c.edge_labels)]
    lines.append(f"p cnf {c.num_vars} {len(c.clauses)}")
    for clause in c.clauses:
        lines.append(" ".join(str(lit) for lit in clause + (0,)))
    return "".join(line + "\n" for line in lines)


def parse_solver_status(text: str) -> Optional[bool]:
    """Читает статус решателя: True для SAT, False для UNSAT, None если его нет"""
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            line = line[2:].strip()
        if line in ("SAT", "SATISFIABLE"):
            return True
        if line in ("UNSAT", "UNSATISFIABLE"):
            return False
    return None


def parse_dimacs_model(text: str, c: CnfInstance) -> Assignment:
    """Разбирает модель решателя и проецирует ее на переменные ребер"""
    values: Dict[int, bool] = {}
    terminated = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("s "):
            continue
        if line in ("SAT", "SATISFIABLE"):
            continue
        if line in ("UNSAT", "UNSATISFIABLE"):
            raise ModelParseError("Решатель сообщил UNSAT, модели нет")
        tokens = line.split()
        if tokens[0] == "v":
            tokens = tokens[1:]
        for token in tokens:
            try:
                lit = int(token)
            except ValueError:
                raise ModelParseError(
                    f"Строка {line_no}: недопустимый литерал '{token}'")
            if terminated:
                raise ModelParseError(f"Строка {line_no}: литералы после 0")
            if lit == 0:
                terminated = True
                continue
            var = abs(lit)
            if var > c.num_vars:
                raise VarOutOfRange(var, c.num_vars)
            if values.get(var, lit > 0) != (lit > 0):
                raise ModelParseError(
                    f"Переменная {var} задана дважды с разными знаками")
            values[var] = lit > 0

    if not terminated:
        raise ModelParseError("Модель обрезана: нет завершающего 0")
    edge_vars = c.edge_var_map
    missing = [var for var in edge_vars.values() if var not in values]
    if missing:
        raise ModelParseError(
            "Неполная модель: нет переменных " + ", ".join(map(str, missing)))
    bits = mask_of(edge for edge, var in edge_vars.items() if values[var])
    return Assignment(c.num_edge_vars, bits)


def enumerate_cnf_models(c: CnfInstance) -> List[Assignment]:
    """Перебирает все модели КНФ и проецирует каждую на переменные ребер.

    Обычный перебор с возвратом по переменным 1..N; дизъюнкт проверяется,
    как только означена его старшая переменная.
    """
    buckets: List[List[Tuple[int, ...]]] = [[] for _ in range(c.num_vars + 1)]
    for clause in c.clauses:
        if not clause:
            return []
        buckets[max(abs(lit) for lit in clause)].append(clause)

    values = [False] * (c.num_vars + 1)
    models: List[Assignment] = []

    def satisfied(clause: Tuple[int, ...]) -> bool:
        return any(values[abs(lit)] == (lit > 0) for lit in clause)

    # tried[k]: сколько значений (False, затем True) уже пробовали для k
    tried = [0] * (c.num_vars + 2)
    var = 1
    while var > 0:
        if var > c.num_vars:
            bits = mask_of(k - 1 for k in range(1, c.num_edge_vars + 1) if values[k])
            models.append(Assignment(c.num_edge_vars, bits))
            var -= 1
            continue
        if tried[var] == 2:
            tried[var] = 0
            var -= 1
            continue
        values[var] = tried[var] == 1
        tried[var] += 1
        if all(satisfied(clause) for clause in buckets[var]):
            var += 1
    return models


def format_dnf(cubes: Sequence[Cube], labels: Sequence[str]) -> str:
    """Печатает ДНФ в виде `(..) | (..)`, пустая ДНФ печатается как 0"""
    if not cubes:
        return "0"
    return " | ".join(f"({cube.format(labels)})" for cube in cubes)
