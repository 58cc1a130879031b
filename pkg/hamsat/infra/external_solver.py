import logging
import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from typing import Tuple

from dotenv import load_dotenv

from hamsat.core.exceptions import ExternalSolverError

load_dotenv()

logger = logging.getLogger(__name__)

# коды выхода решателей: 10 = SATISFIABLE, 20 = UNSATISFIABLE
ACCEPTED_RETURN_CODES = (0, 10, 20)


@dataclass
class ExternalSolverConfig:
    """Конфигурация внешнего SAT-решателя"""

    SOLVER_PATH: str = field(
        default_factory=lambda: os.getenv("HAMSAT_SOLVER_PATH", ""))
    SOLVER_ARGS: Tuple[str, ...] = field(
        default_factory=lambda: tuple(shlex.split(os.getenv("HAMSAT_SOLVER_ARGS", ""))))
    SOLVER_TIMEOUT: int = field(
        default_factory=lambda: int(os.getenv("HAMSAT_SOLVER_TIMEOUT", "60")))

    @property
    def is_configured(self) -> bool:
        return bool(self.SOLVER_PATH)

    def validate(self):
        """Проверяет корректность конфигурации"""
        if not self.SOLVER_PATH:
            raise ValueError("HAMSAT_SOLVER_PATH не установлен.")
        if self.SOLVER_TIMEOUT <= 0:
            raise ValueError("Таймаут решателя должен быть положительным")


class ExternalSolverClient:
    """Клиент для запуска внешнего SAT-решателя на DIMACS-файле"""

    def __init__(self, config: ExternalSolverConfig = None):
        """Инициализирует клиент решателя"""
        self.config = config or ExternalSolverConfig()

    def solve(self, dimacs_text: str) -> str:
        """Запускает решатель и возвращает его стандартный вывод"""
        try:
            self.config.validate()
        except ValueError as e:
            raise ExternalSolverError(str(e))

        with tempfile.TemporaryDirectory(prefix="hamsat-") as workdir:
            cnf_path = os.path.join(workdir, "instance.cnf")
            with open(cnf_path, 'w', encoding='utf-8') as f:
                f.write(dimacs_text)

            command = [self.config.SOLVER_PATH, *self.config.SOLVER_ARGS, cnf_path]
            logger.info(f"Running external solver: {' '.join(command)}")
            try:
                completed = subprocess.run(
                    command,
                    capture_output=True,
                    text=True,
                    timeout=self.config.SOLVER_TIMEOUT,
                )
            except FileNotFoundError:
                raise ExternalSolverError(
                    f"решатель не найден: {self.config.SOLVER_PATH}")
            except subprocess.TimeoutExpired:
                raise ExternalSolverError(
                    f"превышен таймаут {self.config.SOLVER_TIMEOUT} с")
            except OSError as e:
                raise ExternalSolverError(str(e))

        if completed.returncode not in ACCEPTED_RETURN_CODES:
            raise ExternalSolverError(
                f"код возврата {completed.returncode}: {completed.stderr.strip()}")
        logger.info(f"External solver finished with code {completed.returncode}")
        return completed.stdout
