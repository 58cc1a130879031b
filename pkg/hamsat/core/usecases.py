import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from hamsat.core.cycles import Cycle, enumerate_simple_cycles
from hamsat.core.encoder import EncodingReport, build_f1, build_full
from hamsat.core.exceptions import UsageError
from hamsat.core.formula import CnfInstance, expand_to_dnf, tseitin_cnf, write_dimacs
from hamsat.core.graph import Graph
from hamsat.core.oracle import (
    all_labeled_graphs,
    enumerate_2factors,
    find_hamiltonian_cycles,
    random_corpus,
)
from hamsat.core.solver import (
    SolveMethod,
    SolveResult,
    brute_force_solve,
    decode_cycle,
    lazy_refine_solve,
    solve_graph,
)
from hamsat.decorators import log_encode, log_solve, log_verify
from hamsat.infra.external_solver import ExternalSolverClient

logger = logging.getLogger(__name__)

CORPORA = ("exhaustive-n5", "random")

# раскрытие в ДНФ сверяется только на малых графах
DNF_CHECK_MAX_VERTICES = 6


class EncodingManager:
    """Класс менеджер для построения и экспорта формулы графа"""

    def __init__(self, source: str = "graph"):
        """Инициализирует менеджер кодирования"""
        self.source = source

    @log_encode()
    def encode(self,
               g: Graph,
               max_cycles: Optional[int] = None,
               include_f2: bool = True) -> EncodingReport:
        """Строит формулу F = F1 & F2"""
        return build_full(g, max_cycles, include_f2)

    @log_encode()
    def export_dimacs(self,
                      g: Graph,
                      max_cycles: Optional[int] = None,
                      include_f2: bool = True,
                      ) -> Tuple[EncodingReport, CnfInstance, str]:
        """Строит формулу и ее КНФ в формате DIMACS"""
        report = build_full(g, max_cycles, include_f2)
        cnf = tseitin_cnf(report.formula, g.edge_labels)
        return report, cnf, write_dimacs(cnf)

    def list_cycles(self,
                    g: Graph,
                    non_spanning_only: bool = False,
                    max_cycles: Optional[int] = None) -> List[Cycle]:
        """Возвращает простые циклы графа"""
        cycles = enumerate_simple_cycles(g, max_cycles)
        if non_spanning_only:
            cycles = [c for c in cycles if not c.spanning]
        return cycles


class SolvingManager:
    """Класс менеджер для решения задачи о гамильтоновом цикле"""

    def __init__(self,
                 source: str = "graph",
                 solver_client: Optional[ExternalSolverClient] = None):
        """Инициализирует менеджер решения"""
        self.source = source
        self.solver_client = solver_client or ExternalSolverClient()

    @log_solve(verbose=True)
    def solve(self,
              g: Graph,
              method: SolveMethod = SolveMethod.BRUTE,
              find_all: bool = False,
              max_cycles: Optional[int] = None,
              max_rounds: Optional[int] = None,
              max_cubes: Optional[int] = None,
              solver_output: Optional[str] = None) -> SolveResult:
        """Решает задачу выбранным методом"""
        method = SolveMethod(method)
        if method == SolveMethod.EXTERNAL and solver_output is None:
            if not self.solver_client.config.is_configured:
                raise UsageError(
                    "Для метода external нужен --model-file или HAMSAT_SOLVER_PATH")
            cnf = tseitin_cnf(build_full(g, max_cycles).formula, g.edge_labels)
            solver_output = self.solver_client.solve(write_dimacs(cnf))
        return solve_graph(g, method, find_all, max_cycles, max_rounds, max_cubes,
                           solver_output)


@dataclass
class GraphCheck:
    """Результаты проверок эквивалентности для одного графа"""
    name: str
    n: int
    m: int
    hamiltonian_count: int = 0
    model_count: int = 0
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "n": self.n,
            "m": self.m,
            "hamiltonian_count": self.hamiltonian_count,
            "model_count": self.model_count,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    """Сводка проверок по набору графов"""
    corpus: str
    graphs: List[GraphCheck] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.graphs)

    @property
    def failed(self) -> List[GraphCheck]:
        return [check for check in self.graphs if not check.passed]

    @property
    def passed(self) -> bool:
        return not self.failed

    def check_totals(self) -> Dict[str, Tuple[int, int]]:
        """Число пройденных и выполненных проверок каждого вида"""
        totals: Dict[str, Tuple[int, int]] = {}
        for graph_check in self.graphs:
            for name, ok in graph_check.checks.items():
                done, run = totals.get(name, (0, 0))
                totals[name] = (done + int(ok), run + 1)
        return totals


class VerificationManager:
    """Класс менеджер для сверки кодирования с независимыми оракулами"""

    def __init__(self, source: str = "corpus"):
        """Инициализирует менеджер проверки"""
        self.source = source

    def check_graph(self, g: Graph, name: str = "graph") -> GraphCheck:
        """Сверяет F1 с 2-факторами и F с гамильтоновыми циклами"""
        result = GraphCheck(name, g.n, g.m)

        f1_models = brute_force_solve(build_f1(g), find_all=True).models
        factors = enumerate_2factors(g)
        result.checks["two_factors"] = (
            {a.bits for a in f1_models} == {f.edge_mask for f in factors})

        oracle = find_hamiltonian_cycles(g)
        report = build_full(g)
        full = brute_force_solve(report.formula, find_all=True)
        result.hamiltonian_count = oracle.count
        result.model_count = len(full.models)
        decoded = {decode_cycle(g, model) for model in full.models}
        result.checks["hamiltonian"] = (
            full.verdict == (oracle.count > 0)
            and len(full.models) == oracle.count
            and decoded == set(oracle.cycles))

        result.checks["lazy"] = lazy_refine_solve(g).verdict == full.verdict
        if g.n <= DNF_CHECK_MAX_VERTICES:
            result.checks["dnf"] = bool(expand_to_dnf(report.formula)) == full.verdict
        return result

    @log_verify(verbose=False)
    def verify_graph(self, g: Graph, name: str = "graph") -> VerificationReport:
        """Проверяет один граф"""
        report = VerificationReport(corpus=name)
        report.graphs.append(self.check_graph(g, name))
        return report

    @log_verify(verbose=False)
    def verify_corpus(self,
                      corpus: str,
                      count: int = 500,
                      seed: int = 0) -> VerificationReport:
        """Проверяет все графы сгенерированного набора"""
        if corpus == "exhaustive-n5":
            graphs = list(all_labeled_graphs(5, connected_only=True))
        elif corpus == "random":
            graphs = random_corpus(count, seed)
        else:
            raise UsageError(
                f"Неизвестный набор '{corpus}', доступны: {', '.join(CORPORA)}")

        report = VerificationReport(corpus=corpus)
        for index, g in enumerate(graphs):
            check = self.check_graph(g, f"{corpus}#{index}")
            if not check.passed:
                logger.error(f"Verification failed for {check.name}: {check.checks}")
            report.graphs.append(check)
        logger.info(f"Verified {report.total} graphs, {len(report.failed)} failed")
        return report
