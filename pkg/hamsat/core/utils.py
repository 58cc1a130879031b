from typing import Iterator

from hamsat.core.exceptions import UsageError


def validate_positive_int(value, name: str) -> int:
    """Валидирует положительный целочисленный лимит"""
    try:
        number = int(value)
    except (ValueError, TypeError):
        raise UsageError(f"Параметр {name} должен быть целым числом")
    if number <= 0:
        raise UsageError(f"Параметр {name} должен быть положительным")
    return number


def validate_probability(value) -> float:
    """Валидирует вероятность ребра"""
    try:
        p = float(value)
    except (ValueError, TypeError):
        raise UsageError("Вероятность должна быть числом")
    if not 0.0 <= p <= 1.0:
        raise UsageError("Вероятность должна лежать в отрезке [0, 1]")
    return p


def iter_bits(mask: int) -> Iterator[int]:
    """Перебирает номера единичных битов по возрастанию"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    """Возвращает число единичных битов"""
    return mask.bit_count()


def mask_of(indices) -> int:
    """Собирает битовую маску из номеров"""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask
