from typing import Any, Optional


class HamSatError(Exception):
    """Базовое исключение для HamSAT"""
    code = "HAMSAT_ERROR"
    exit_code = 1


class ParseError(HamSatError):
    """Исключение для некорректной строки во входном файле графа"""
    code = "PARSE_ERROR"

    def __init__(self, line_no: int, reason: str):
        message = f"Строка {line_no}: {reason}"
        super().__init__(message)
        self.line_no = line_no
        self.reason = reason


class ValidationError(HamSatError):
    """Исключение для нарушения инвариантов графа"""
    code = "VALIDATION_ERROR"

    _MESSAGES = {
        "loop": "петля",
        "duplicate_edge": "кратное ребро",
        "duplicate_label": "повторная метка ребра",
        "duplicate_vertex": "повторная метка вершины",
        "bad_index": "номер ребра не совпадает с позицией",
        "bad_endpoint": "конец ребра вне графа",
        "unordered": "концы ребра не упорядочены",
        "empty_graph": "во входе нет ни одного ребра",
    }

    def __init__(self, kind: str, detail: str = "", line_no: Optional[int] = None):
        location = f"строка {line_no}: " if line_no is not None else ""
        reason = self._MESSAGES.get(kind, kind)
        message = f"{location}{reason}" + (f" ({detail})" if detail else "")
        super().__init__(message)
        self.kind = kind
        self.detail = detail
        self.line_no = line_no


class UsageError(HamSatError):
    """Исключение для некорректных аргументов командной строки"""
    code = "USAGE_ERROR"


class WidthMismatch(HamSatError):
    """Исключение для несовпадения ширины набора и числа переменных"""
    code = "WIDTH_MISMATCH"

    def __init__(self, expected: int, actual: int):
        message = f"Ожидался набор ширины {expected}, получен ширины {actual}"
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class ModelParseError(HamSatError):
    """Исключение для некорректного вывода SAT-решателя"""
    code = "MODEL_PARSE_ERROR"


class VarOutOfRange(ModelParseError):
    """Исключение для переменной вне диапазона CNF"""
    code = "VAR_OUT_OF_RANGE"

    def __init__(self, variable: int, num_vars: int):
        message = f"Переменная {variable} вне диапазона 1..{num_vars}"
        super().__init__(message)
        self.variable = variable
        self.num_vars = num_vars


class ModelInvalid(HamSatError):
    """Исключение для модели, не выполняющей формулу"""
    code = "MODEL_INVALID"


class ExternalSolverError(HamSatError):
    """Исключение для ошибок запуска внешнего SAT-решателя"""
    code = "EXTERNAL_SOLVER_ERROR"

    def __init__(self, reason: str = ""):
        message = f"Ошибка при обращении к внешнему решателю: {reason}"
        super().__init__(message)
        self.reason = reason


class CapExceeded(HamSatError):
    """Базовое исключение для превышения настраиваемых лимитов"""
    code = "CAP_EXCEEDED"
    exit_code = 3


class CycleOverflow(CapExceeded):
    """Исключение для превышения лимита числа циклов"""
    code = "CYCLE_OVERFLOW"

    def __init__(self, limit: int):
        message = f"Число простых циклов превышает лимит {limit}"
        super().__init__(message)
        self.limit = limit


class ExpansionOverflow(CapExceeded):
    """Исключение для превышения лимита числа конъюнкций при раскрытии скобок"""
    code = "EXPANSION_OVERFLOW"

    def __init__(self, limit: int, block_index: int):
        message = (f"Число конъюнкций превысило лимит {limit} "
                   f"на блоке {block_index}")
        super().__init__(message)
        self.limit = limit
        self.block_index = block_index


class RoundLimitExceeded(CapExceeded):
    """Исключение для превышения лимита раундов уточнения"""
    code = "ROUND_LIMIT"

    def __init__(self, limit: int, stats: Any = None):
        message = f"Уточнение не сошлось за {limit} раундов"
        super().__init__(message)
        self.limit = limit
        self.stats = stats


class TooManyVariables(CapExceeded):
    """Исключение для слишком большого перебора"""
    code = "TOO_MANY_VARIABLES"

    def __init__(self, num_vars: int, limit: int):
        message = f"Полный перебор {num_vars} переменных запрещен (лимит {limit})"
        super().__init__(message)
        self.num_vars = num_vars
        self.limit = limit


class TooLarge(CapExceeded):
    """Исключение для графа, превышающего лимиты точных алгоритмов"""
    code = "TOO_LARGE"

    def __init__(self, what: str, size: int, limit: int):
        message = f"Слишком большой граф: {what}={size}, лимит {limit}"
        super().__init__(message)
        self.what = what
        self.size = size
        self.limit = limit


class EncodingInvariantError(HamSatError):
    """Исключение для нарушения соответствия моделей и гамильтоновых циклов"""
    code = "INTERNAL_INVARIANT"
    exit_code = 2
