import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from hamsat.bench_service.config import BenchConfig
from hamsat.bench_service.families import get_family
from hamsat.core.encoder import build_full
from hamsat.core.exceptions import CapExceeded, CycleOverflow
from hamsat.core.graph import Graph
from hamsat.core.solver import lazy_refine_solve
from hamsat.decorators import log_bench

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchRecord:
    """Размер формулы для одного графа семейства"""
    family: str
    n: int
    m: int
    cycle_count: int
    f2_block_count: int
    total_cube_count: int
    encode_time: float
    solve_time: Optional[float] = None
    satisfiable: Optional[bool] = None


@dataclass
class BenchResult:
    """Записи замера и ошибка переполнения, если она прервала замер"""
    family: str
    records: List[BenchRecord] = field(default_factory=list)
    overflow: Optional[CycleOverflow] = None

    def to_dict(self, schema_version: int = 1) -> Dict[str, Any]:
        return {
            "schema_version": schema_version,
            "family": self.family,
            "records": [asdict(record) for record in self.records],
            "complete": self.overflow is None,
        }


class BenchRunner:
    """Класс для замера роста числа циклов и блоков F2"""

    def __init__(self, config: BenchConfig = None):
        """Инициализирует замер"""
        self.config = config or BenchConfig()
        self.source = self.config.FAMILY

    def _elapsed(self, started: float) -> float:
        return round(time.perf_counter() - started, self.config.TIME_DIGITS)

    def _solve_time(self, graph: Graph) -> Tuple[Optional[float], Optional[bool]]:
        """Время ленивого решения или (None, None), если лимиты превышены"""
        started = time.perf_counter()
        try:
            result = lazy_refine_solve(graph)
        except CapExceeded as e:
            logger.warning(f"Solve skipped for n={graph.n}: {e}")
            return None, None
        return self._elapsed(started), result.verdict

    @log_bench()
    def run(self) -> BenchResult:
        """Запускает замер по всем графам семейства"""
        self.config.validate()
        family = get_family(self.config)
        result = BenchResult(family=family.name)
        logger.info(f"Starting bench for family {family.name}...")

        for n, graph in family.graphs():
            started = time.perf_counter()
            try:
                report = build_full(graph, self.config.MAX_CYCLES)
            except CycleOverflow as e:
                logger.error(f"Bench stopped at n={n}: {e}")
                result.overflow = e
                break
            encode_time = self._elapsed(started)

            solve_time, satisfiable = None, None
            if self.config.SOLVE:
                solve_time, satisfiable = self._solve_time(graph)

            result.records.append(BenchRecord(
                family=family.name,
                n=n,
                m=graph.m,
                cycle_count=report.cycle_count,
                f2_block_count=report.f2_block_count,
                total_cube_count=report.cube_count_total,
                encode_time=encode_time,
                solve_time=solve_time,
                satisfiable=satisfiable,
            ))
            logger.info(f"Bench n={n}: {report.cycle_count} cycles, "
                        f"{report.f2_block_count} F2 blocks")

        result.records.sort(key=lambda record: record.n)
        return result
