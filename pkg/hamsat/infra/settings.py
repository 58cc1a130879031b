try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, Optional

PYPROJECT_PATH = "pyproject.toml"

DEFAULT_SETTINGS: Dict[str, Any] = {
    "MAX_CYCLES": 1_000_000,
    "MAX_CUBES": 1_000_000,
    "MAX_ROUNDS": 1000,
    "BRUTE_FORCE_MAX_VARS": 26,
    "BRUTE_FORCE_CHUNK_BITS": 16,
    "SOLVER_MAX_VERTICES": 64,
    "SOLVER_MAX_EDGES": 64,
    "ORACLE_MAX_VERTICES": 14,
    "TWO_FACTOR_MAX_EDGES": 24,
    "VERTEX_ORDER": "appearance",
    "RANDOM_CORPUS_MIN_N": 4,
    "RANDOM_CORPUS_MAX_N": 8,
    "RANDOM_CORPUS_MAX_EDGES": 18,
    "LOG_DIR": "logs",
    "LOG_FILE": "hamsat.log",
    "ACTIONS_LOG_FILE": "actions.log",
    "LOG_LEVEL": "INFO",
    "LOG_CONSOLE_LEVEL": "WARNING",
    "LOG_MAX_SIZE_MB": 10,
    "LOG_BACKUP_COUNT": 3,
}


class SettingsLoader:
    """Singleton с лимитами и параметрами логирования из секции [tool.hamsat]"""

    _instance = None

    def __new__(cls):
        """Реализация паттерна Singleton"""
        if cls._instance is None:
            cls._instance = super(SettingsLoader, cls).__new__(cls)
            cls._instance._config = None
        return cls._instance

    @property
    def config(self) -> Dict[str, Any]:
        """Текущие настройки; читаются при первом обращении"""
        if self._config is None:
            self.reload()
        return self._config

    def reload(self, path: Optional[str] = None):
        """Перечитывает pyproject.toml поверх значений по умолчанию"""
        config = dict(DEFAULT_SETTINGS)
        try:
            with Path(path or PYPROJECT_PATH).open("rb") as f:
                section = tomllib.load(f).get("tool", {}).get("hamsat", {})
        except (OSError, tomllib.TOMLDecodeError):
            section = {}
        config.update({key.upper(): value for key, value in section.items()})
        self._config = config

    def get(self, key: str, default: Any = None) -> Any:
        """Получает значение настройки по ключу"""
        return self.config.get(key.upper(), default)
