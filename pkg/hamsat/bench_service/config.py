from dataclasses import dataclass, field
from typing import Optional, Tuple

from hamsat.infra.settings import SettingsLoader


@dataclass
class BenchConfig:
    """Конфигурация замера роста формулы"""

    FAMILY: str = "complete"
    N_MIN: int = 4
    N_MAX: int = 8
    DEGREE: int = 3
    SEED: int = 0
    SOLVE: bool = False
    MAX_CYCLES: int = field(default_factory=lambda:
        SettingsLoader().get("MAX_CYCLES", 1_000_000))

    FAMILIES: Tuple[str, ...] = ("complete", "theta", "random-regular")
    SCHEMA_VERSION: int = 1
    TIME_DIGITS: int = 6

    OUTPUT_PATH: Optional[str] = None

    def validate(self):
        """Проверяет корректность конфигурации"""
        if self.FAMILY not in self.FAMILIES:
            raise ValueError(f"Неизвестное семейство графов '{self.FAMILY}'")
        if self.N_MIN < 3:
            raise ValueError("Минимальное число вершин должно быть не меньше 3")
        if self.N_MAX < self.N_MIN:
            raise ValueError("--n-max должен быть не меньше --n-min")
        if self.FAMILY == "random-regular" and not 2 <= self.DEGREE < self.N_MIN:
            raise ValueError("Степень должна лежать в диапазоне 2..n-1")
        if self.MAX_CYCLES <= 0:
            raise ValueError("Лимит циклов должен быть положительным")
