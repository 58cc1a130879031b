import logging
import os
from logging.handlers import RotatingFileHandler

from hamsat.infra.settings import SettingsLoader

actions_logger = logging.getLogger('hamsat.actions')
logger = logging.getLogger('hamsat')


def _rotating_handler(path: str, settings: SettingsLoader) -> RotatingFileHandler:
    """Создает файловый обработчик с ротацией"""
    max_size_mb = settings.get("LOG_MAX_SIZE_MB", 10)
    backup_count = settings.get("LOG_BACKUP_COUNT", 3)
    return RotatingFileHandler(
        path,
        maxBytes=max_size_mb * 1024 * 1024,
        backupCount=backup_count,
        encoding='utf-8'
    )


def _configure(target: logging.Logger,
               path: str,
               formatter: logging.Formatter,
               level: int,
               console_level: int,
               settings: SettingsLoader):
    """Подключает к логгеру файл с ротацией и вывод в stderr"""
    target.setLevel(level)
    target.handlers.clear()
    file_handler = _rotating_handler(path, settings)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_level)
    for handler in (file_handler, console_handler):
        handler.setFormatter(formatter)
        target.addHandler(handler)


def setup_logging():
    """Настройка логирования для приложения"""
    settings = SettingsLoader()

    log_dir = settings.get("LOG_DIR", "logs")
    os.makedirs(log_dir, exist_ok=True)

    actions_log_path = os.path.join(
        log_dir, settings.get("ACTIONS_LOG_FILE", "actions.log"))
    main_log_path = os.path.join(log_dir, settings.get("LOG_FILE", "hamsat.log"))

    actions_formatter = logging.Formatter(
        '%(levelname)s %(asctime)s %(action)s '
        'source=%(source)s%(extra_info)s result=%(result)s',
        datefmt='%Y-%m-%dT%H:%M:%S'
    )

    main_formatter = logging.Formatter(
        '%(levelname)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    log_level = settings.get("LOG_LEVEL", "INFO").upper()
    level = getattr(logging, log_level, logging.INFO)
    console_level = getattr(
        logging, settings.get("LOG_CONSOLE_LEVEL", "WARNING").upper(), logging.WARNING)

    _configure(actions_logger, actions_log_path, actions_formatter,
               level, console_level, settings)
    actions_logger.propagate = False
    _configure(logger, main_log_path, main_formatter, level, console_level, settings)

    return actions_logger, logger
