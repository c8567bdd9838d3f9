"""
Модуль валидации входных данных и проверки лимитов вычислений.
"""

import logging
from typing import Any

from config import COST_GUARDS, GUARD_TEXT

logger = logging.getLogger(__name__)


class NcgError(Exception):
    """Базовая ошибка ncgraph."""


class InvalidInputError(NcgError):
    """Некорректные входные данные: таблица, порядок подгруппы, селектор."""


class TableValidationError(InvalidInputError):
    """Таблица умножения нарушает аксиому группы."""

    def __init__(self, axiom: str, indices: tuple[int, ...], detail: str = "") -> None:
        self.axiom = axiom
        self.indices = indices
        message = f"Нарушена аксиома «{axiom}» на индексах {indices}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class CostGuardError(NcgError):
    """Превышен лимит вычислений."""

    def __init__(self, check_result: dict[str, Any]) -> None:
        self.kind = check_result["kind"]
        self.current = check_result["current"]
        self.limit = check_result["limit"]
        super().__init__(format_guard_message(check_result))


# Проверка лимита вычислений
def check_cost_guard(kind: str, current: int, limit: int | None = None) -> dict[str, Any]:
    """
    Проверяет, укладывается ли размер задачи в лимит.
    Возвращает словарь с результатом проверки.
    """
    # Проверяем что лимит известен
    if limit is None and kind not in COST_GUARDS:
        return {"allowed": False, "error": f"Неизвестный лимит: {kind}", "kind": kind}

    bound = COST_GUARDS[kind] if limit is None else limit
    return {
        "allowed": current <= bound,
        "current": current,
        "limit": bound,
        "kind": kind,
    }


# Проверка лимита с исключением
def require_within_guard(kind: str, current: int, limit: int | None = None) -> None:
    result = check_cost_guard(kind, current, limit)
    if "error" in result:
        raise InvalidInputError(result["error"])
    if not result["allowed"]:
        logger.warning(
            "Превышен лимит %s: %s > %s", kind, result["current"], result["limit"]
        )
        raise CostGuardError(result)


# Форматирование сообщения о превышении лимита
def format_guard_message(check_result: dict[str, Any]) -> str:
    """Формирует сообщение о превышении лимита."""
    what = GUARD_TEXT.get(check_result["kind"], check_result["kind"])
    return (
        f"Лимит превышен: {what} — "
        f"{check_result['current']} при допустимых {check_result['limit']}"
    )


# Проверка порядка подгруппы циклической группы
def validate_cyclic_pair(n: int, h: int, min_n: int = 2) -> None:
    """Проверяет n ≥ min_n, h ≥ 2 и h | n."""
    if n < min_n:
        raise InvalidInputError(f"Порядок группы должен быть не меньше {min_n}, получено {n}")
    if h < 2:
        raise InvalidInputError("Подгруппа H = {e} не допускается")
    if n % h:
        raise InvalidInputError(f"Порядок подгруппы {h} не делит {n}")


# Разбор списка свойств из командной строки
def parse_property_list(text: str | None, known: tuple[str, ...]) -> tuple[str, ...]:
    """
    Разбирает список свойств через запятую.
    Пустая строка или None — все известные свойства.
    """
    if not text:
        return known
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [name for name in names if name not in known]
    # Проверяем что все свойства известны
    if unknown:
        raise InvalidInputError(f"Неизвестные свойства: {', '.join(unknown)}")
    return names


# Разбор дополнительного экземпляра вида N:H
def parse_instance(text: str) -> tuple[int, int]:
    """Разбирает строку «n:h» в пару целых и проверяет делимость."""
    try:
        n_text, h_text = text.split(":")
        n, h = int(n_text), int(h_text)
    except ValueError:
        raise InvalidInputError(f"Ожидался формат N:H, получено «{text}»") from None
    validate_cyclic_pair(n, h, min_n=3)
    return n, h
