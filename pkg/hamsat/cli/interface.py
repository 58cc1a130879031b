import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from prettytable import PrettyTable

from hamsat.bench_service.config import BenchConfig
from hamsat.bench_service.runner import BenchResult, BenchRunner
from hamsat.core.encoder import EncodingReport
from hamsat.core.exceptions import HamSatError, UsageError
from hamsat.core.formula import BlockOrigin
from hamsat.core.graph import VERTEX_ORDERS, Graph, load_graph
from hamsat.core.solver import SolveMethod, SolveResult
from hamsat.core.usecases import (
    CORPORA,
    EncodingManager,
    SolvingManager,
    VerificationManager,
    VerificationReport,
)
from hamsat.core.utils import validate_positive_int
from hamsat.infra.settings import SettingsLoader
from hamsat.infra.storage import OutputStorage, to_json

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_STRICT_ASSUMPTIONS = 4

SUBCOMMANDS = ("encode", "solve", "verify", "cycles", "bench")


class _ArgumentParser(argparse.ArgumentParser):
    """Парсер, сообщающий об ошибках исключением вместо выхода с кодом 2"""

    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    """Параметры одного запуска CLI"""
    subcommand: str
    input_path: Optional[str] = None
    corpus: Optional[str] = None
    vertex_order: str = "appearance"
    output: Optional[str] = None
    json: bool = False
    strict_assumptions: bool = False
    max_cycles: Optional[int] = None
    max_rounds: Optional[int] = None
    max_cubes: Optional[int] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Собирает конфигурацию из разобранных аргументов"""
        config = cls(
            subcommand=args.command,
            input_path=getattr(args, "graph", None),
            corpus=getattr(args, "corpus", None),
            vertex_order=getattr(args, "vertex_order", "appearance"),
            output=getattr(args, "output", None),
            json=getattr(args, "json", False),
            strict_assumptions=getattr(args, "strict_assumptions", False),
            max_cycles=getattr(args, "max_cycles", None),
            max_rounds=getattr(args, "max_rounds", None),
            max_cubes=getattr(args, "max_cubes", None),
        )
        config.validate()
        return config

    def validate(self):
        """Проверяет лимиты и единственность источника входных данных"""
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"Неизвестная команда '{self.subcommand}'")
        for name in ("max_cycles", "max_rounds", "max_cubes"):
            value = getattr(self, name)
            if value is not None:
                validate_positive_int(value, "--" + name.replace("_", "-"))
        if self.subcommand == "bench":
            return
        if self.input_path and self.corpus:
            raise UsageError("Укажите либо файл графа, либо --corpus, но не оба")
        if not self.input_path and not self.corpus:
            raise UsageError("Не указан входной граф")


class CLIInterface:
    """Консольный интерфейс для кодирования задачи о гамильтоновом цикле."""

    def __init__(self):
        """Инициализирует менеджеры и хранилище"""
        self.settings = SettingsLoader()
        self.storage = OutputStorage()
        self.encoding_manager = EncodingManager()
        self.solving_manager = SolvingManager()
        self.verification_manager = VerificationManager()

    def build_parser(self) -> argparse.ArgumentParser:
        """Создает парсер аргументов со всеми подкомандами"""
        parser = _ArgumentParser(
            prog="hamsat",
            description="Кодирование задачи о гамильтоновом цикле формулой F = F1 & F2")
        subparsers = parser.add_subparsers(dest="command", required=True)
        default_order = self.settings.get("VERTEX_ORDER", "appearance")

        def add_graph_options(sub, graph_required: bool = True):
            sub.add_argument("graph", nargs=None if graph_required else "?",
                             help="файл списка ребер")
            sub.add_argument("--vertex-order", choices=VERTEX_ORDERS,
                             default=default_order,
                             help="порядок нумерации вершин")

        encode = subparsers.add_parser("encode", help="построить формулу F")
        add_graph_options(encode)
        encode.add_argument("--format", choices=("expr", "dimacs"), default="expr",
                            help="формат вывода")
        encode.add_argument("--no-f2", action="store_true",
                            help="не строить блоки F2")
        encode.add_argument("--max-cycles", type=int, help="лимит числа циклов")
        encode.add_argument("--output", help="файл для записи результата")
        encode.add_argument("--strict-assumptions", action="store_true",
                            help="считать нарушения предположений ошибкой")

        solve = subparsers.add_parser("solve", help="решить задачу для графа")
        add_graph_options(solve)
        solve.add_argument("--method", choices=[m.value for m in SolveMethod],
                           default=SolveMethod.BRUTE.value, help="метод решения")
        solve.add_argument("--all", action="store_true", dest="find_all",
                           help="вывести все модели")
        solve.add_argument("--model-file", help="вывод внешнего SAT-решателя")
        solve.add_argument("--max-rounds", type=int, help="лимит раундов уточнения")
        solve.add_argument("--max-cubes", type=int, help="лимит конъюнкций ДНФ")
        solve.add_argument("--max-cycles", type=int, help="лимит числа циклов")
        solve.add_argument("--json", action="store_true", help="вывод в JSON")
        solve.add_argument("--strict-assumptions", action="store_true",
                           help="считать нарушения предположений ошибкой")

        verify = subparsers.add_parser("verify", help="сверить кодирование с оракулами")
        add_graph_options(verify, graph_required=False)
        verify.add_argument("--corpus", choices=CORPORA, help="набор графов")
        verify.add_argument("--count", type=int, default=500,
                            help="число случайных графов")
        verify.add_argument("--seed", type=int, default=0, help="seed генератора")
        verify.add_argument("--json", action="store_true", help="вывод в JSON")

        cycles = subparsers.add_parser("cycles", help="перечислить простые циклы")
        add_graph_options(cycles)
        cycles.add_argument("--non-spanning", action="store_true",
                            help="только негамильтоновы циклы")
        cycles.add_argument("--max-cycles", type=int, help="лимит числа циклов")

        bench = subparsers.add_parser("bench", help="замерить рост формулы")
        bench.add_argument("--family", choices=BenchConfig.FAMILIES,
                           default="complete", help="семейство графов")
        bench.add_argument("--n-min", type=int, default=4, help="минимальное n")
        bench.add_argument("--n-max", type=int, default=8, help="максимальное n")
        bench.add_argument("--degree", type=int, default=3,
                           help="степень для random-regular")
        bench.add_argument("--seed", type=int, default=0, help="seed генератора")
        bench.add_argument("--solve", action="store_true",
                           help="замерить время ленивого решения")
        bench.add_argument("--max-cycles", type=int, help="лимит числа циклов")
        bench.add_argument("--json", action="store_true", help="вывод в JSON")
        bench.add_argument("--output", help="файл для записи результата")
        return parser

    def _load(self, config: RunConfig) -> Graph:
        """Загружает граф и помечает менеджеры именем его файла"""
        for manager in (self.encoding_manager, self.solving_manager,
                        self.verification_manager):
            manager.source = config.input_path
        return load_graph(config.input_path, config.vertex_order)

    def _emit(self, text: str, output: Optional[str] = None):
        """Печатает результат или сохраняет его в файл"""
        if output:
            self.storage.write_text(output, text)
        else:
            print(text, end="" if text.endswith("\n") else "\n")

    def _strict_failure(self, g: Graph, report: EncodingReport) -> int:
        """Печатает нарушения предположений и возвращает код 4"""
        for warning in report.warnings:
            print(f"error[ASSUMPTION_VIOLATED]: {warning.message(g)}", file=sys.stderr)
        return EXIT_STRICT_ASSUMPTIONS

    @staticmethod
    def _block_name(g: Graph, origin: BlockOrigin) -> str:
        if origin.kind == BlockOrigin.VERTEX:
            return f"d({g.vertex_label(origin.value)})"
        return f"D({g.format_vertex_set(origin.value)})"

    def format_encoding(self, g: Graph, report: EncodingReport) -> str:
        """Текст формулы: сначала блоки F1, затем блоки F2"""
        labels = g.edge_labels
        lines = []
        parts = (("F1", report.f1), ("F2", report.f2))
        for title, part in parts:
            lines.append(f"# {title}: {len(part.blocks)} blocks")
            for block in part.blocks:
                name = self._block_name(g, block.origin)
                lines.append(f"{name} = {block.format(labels)}")
        lines.append(f"# cubes: {report.cube_count_total}")
        return "\n".join(lines) + "\n"

    def handle_encode(self, args: argparse.Namespace, config: RunConfig) -> int:
        """Обрабатывает команду encode"""
        g = self._load(config)
        include_f2 = not args.no_f2
        if args.format == "dimacs":
            report, _, text = self.encoding_manager.export_dimacs(
                g, config.max_cycles, include_f2)
        else:
            report = self.encoding_manager.encode(g, config.max_cycles, include_f2)
            text = self.format_encoding(g, report)
        if config.strict_assumptions and report.warnings:
            return self._strict_failure(g, report)
        self._emit(text, config.output)
        return EXIT_OK

    def format_solve(self, g: Graph, result: SolveResult) -> str:
        """Текст вердикта, моделей и статистики"""
        verdict = "satisfiable" if result.verdict else "unsatisfiable"
        lines = [f"verdict: {verdict}"]
        for model, cycle in zip(result.models, result.decoded_cycles):
            route = "-".join(g.vertex_label(v) for v in cycle)
            lines.append(f"edges: {model.format(g.edge_labels)} cycle: {route}")
        lines.append("stats:")
        lines.append(f"  method: {result.method.value}")
        for key, value in result.stats.as_dict().items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines) + "\n"

    def solve_to_dict(self, g: Graph, result: SolveResult) -> dict:
        """JSON-представление результата решения"""
        return {
            "schema_version": SCHEMA_VERSION,
            "verdict": result.verdict,
            "method": result.method.value,
            "models": [
                {
                    "edges": [g.edge_label(e) for e in model.positive_edges()],
                    "cycle": [g.vertex_label(v) for v in cycle],
                }
                for model, cycle in zip(result.models, result.decoded_cycles)
            ],
            "stats": result.stats.as_dict(),
        }

    def handle_solve(self, args: argparse.Namespace, config: RunConfig) -> int:
        """Обрабатывает команду solve"""
        g = self._load(config)
        if config.strict_assumptions:
            report = self.encoding_manager.encode(g, config.max_cycles)
            if report.warnings:
                return self._strict_failure(g, report)

        solver_output = None
        if args.model_file:
            if args.method != SolveMethod.EXTERNAL.value:
                raise UsageError("--model-file используется только с --method external")
            solver_output = self.storage.read_text(args.model_file)

        result = self.solving_manager.solve(
            g,
            SolveMethod(args.method),
            find_all=args.find_all,
            max_cycles=config.max_cycles,
            max_rounds=config.max_rounds,
            max_cubes=config.max_cubes,
            solver_output=solver_output,
        )
        if config.json:
            self._emit(to_json(self.solve_to_dict(g, result)))
        else:
            self._emit(self.format_solve(g, result))
        return EXIT_OK

    def verification_to_dict(self, report: VerificationReport) -> dict:
        """JSON-представление результатов проверки"""
        return {
            "schema_version": SCHEMA_VERSION,
            "corpus": report.corpus,
            "total": report.total,
            "failed": len(report.failed),
            "passed": report.passed,
            "checks": {name: {"passed": done, "total": run}
                       for name, (done, run) in report.check_totals().items()},
            "failures": [check.to_dict() for check in report.failed],
        }

    def format_verification(self, report: VerificationReport) -> str:
        """Таблица пройденных проверок"""
        table = PrettyTable()
        table.field_names = ["Check", "Passed", "Total", "Status"]
        table.align["Check"] = "l"
        for name, (done, run) in report.check_totals().items():
            table.add_row([name, done, run, "PASS" if done == run else "FAIL"])
        lines = [f"corpus: {report.corpus} ({report.total} graphs)", str(table)]
        for check in report.failed:
            failed = ", ".join(k for k, ok in check.checks.items() if not ok)
            lines.append(f"FAIL {check.name} (n={check.n}, m={check.m}): {failed}")
        lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def handle_verify(self, args: argparse.Namespace, config: RunConfig) -> int:
        """Обрабатывает команду verify"""
        if config.corpus:
            count = validate_positive_int(args.count, "--count")
            self.verification_manager.source = config.corpus
            report = self.verification_manager.verify_corpus(
                config.corpus, count, args.seed)
        else:
            g = self._load(config)
            report = self.verification_manager.verify_graph(g, config.input_path)

        if config.json:
            self._emit(to_json(self.verification_to_dict(report)))
        else:
            self._emit(self.format_verification(report))
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    def handle_cycles(self, args: argparse.Namespace, config: RunConfig) -> int:
        """Обрабатывает команду cycles"""
        g = self._load(config)
        cycles = self.encoding_manager.list_cycles(
            g, args.non_spanning, config.max_cycles)
        lines = [cycle.format(g) for cycle in cycles]
        lines.append(f"count: {len(cycles)}")
        self._emit("\n".join(lines) + "\n")
        return EXIT_OK

    def format_bench(self, result: BenchResult) -> str:
        """Таблица замера по возрастанию n"""
        table = PrettyTable()
        table.field_names = ["family", "n", "m", "cycles", "F2 blocks", "cubes",
                             "encode_time", "solve_time"]
        for record in result.records:
            table.add_row([
                record.family, record.n, record.m, record.cycle_count,
                record.f2_block_count, record.total_cube_count, record.encode_time,
                "-" if record.solve_time is None else record.solve_time,
            ])
        return str(table) + "\n"

    def handle_bench(self, args: argparse.Namespace, config: RunConfig) -> int:
        """Обрабатывает команду bench"""
        bench_config = BenchConfig(
            FAMILY=args.family,
            N_MIN=args.n_min,
            N_MAX=args.n_max,
            DEGREE=args.degree,
            SEED=args.seed,
            SOLVE=args.solve,
            OUTPUT_PATH=config.output,
        )
        if config.max_cycles is not None:
            bench_config.MAX_CYCLES = config.max_cycles
        try:
            bench_config.validate()
        except ValueError as e:
            raise UsageError(str(e))

        result = BenchRunner(bench_config).run()
        if config.json:
            text = to_json(result.to_dict(bench_config.SCHEMA_VERSION)) + "\n"
        else:
            text = self.format_bench(result)
        self._emit(text, config.output)
        if result.overflow is not None:
            raise result.overflow
        return EXIT_OK

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Разбирает аргументы, выполняет подкоманду и возвращает код выхода"""
        handlers = {
            "encode": self.handle_encode,
            "solve": self.handle_solve,
            "verify": self.handle_verify,
            "cycles": self.handle_cycles,
            "bench": self.handle_bench,
        }
        argv: List[str] = list(sys.argv[1:] if argv is None else argv)
        try:
            args = self.build_parser().parse_args(argv)
            config = RunConfig.from_args(args)
            return handlers[config.subcommand](args, config)
        except SystemExit as e:
            # --help
            return e.code if isinstance(e.code, int) else EXIT_OK
        except HamSatError as e:
            print(f"error[{e.code}]: {e}", file=sys.stderr)
            return e.exit_code
        except OSError as e:
            print(f"error[IO_ERROR]: {e}", file=sys.stderr)
            return EXIT_USAGE
