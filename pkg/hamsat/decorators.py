import functools
from typing import Any, Callable

from hamsat.core.graph import Graph
from hamsat.logging_config import actions_logger


def _find_graph(args, kwargs) -> Any:
    """Ищет граф среди аргументов вызова"""
    for value in list(args) + list(kwargs.values()):
        if isinstance(value, Graph):
            return value
    return None


def log_action(action: str, verbose: bool = False):
    """Декоратор для логирования операций над графами"""
    def decorator(func: Callable) -> Callable:
        """Внутренний декоратор"""
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            """Обертка функции с логированием"""
            log_data = {
                'action': action,
                'source': 'unknown',
                'result': 'OK',
                'extra_info': '',
            }

            graph = _find_graph(args, kwargs)
            if graph is not None:
                log_data['extra_info'] = f" n={graph.n} m={graph.m}"
            if args and hasattr(args[0], 'source') and args[0].source:
                log_data['source'] = args[0].source

            try:
                result = func(*args, **kwargs)
                if verbose and hasattr(result, 'verdict'):
                    log_data['extra_info'] += f" verdict={result.verdict}"
                actions_logger.info('', extra=log_data)
                return result

            except Exception as e:
                log_data['result'] = 'ERROR'
                log_data['extra_info'] += (f" error_type={e.__class__.__name__} "
                                           f"error_message='{e}'")
                actions_logger.info('', extra=log_data)
                raise

        return wrapper
    return decorator


def log_encode(verbose: bool = False):
    return log_action('ENCODE', verbose=verbose)


def log_solve(verbose: bool = False):
    return log_action('SOLVE', verbose=verbose)


def log_verify(verbose: bool = False):
    return log_action('VERIFY', verbose=verbose)


def log_bench(verbose: bool = False):
    return log_action('BENCH', verbose=verbose)
