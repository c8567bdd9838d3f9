"""
Чтение и запись таблиц умножения в текстовом формате:
строка 1 — порядок n, строка 2 — имена элементов (необязательна),
далее n строк по n индексов. Индекс 0 — единица.
"""

import logging
from pathlib import Path

from groups import FiniteGroup, TableGroup
from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)


def _parse_ints(line: str, line_no: int) -> list[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError as exc:
        raise InvalidInputError(f"Строка {line_no}: ожидались целые числа ({exc})") from exc


# Разбор текста таблицы
def parse_table(text: str, name: str = "G") -> TableGroup:
    """
    Пустые строки пропускаются. Имена элементов присутствуют, если
    непустых строк n + 2, и отсутствуют, если их n + 1.
    """
    lines = [(no, line) for no, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        raise InvalidInputError("Файл таблицы пуст")

    header = _parse_ints(lines[0][1], lines[0][0])
    if len(header) != 1 or header[0] < 1:
        raise InvalidInputError(f"Строка {lines[0][0]}: ожидался порядок группы n ≥ 1")
    n = header[0]

    rest = lines[1:]
    names: list[str] | None = None
    if len(rest) == n + 1:
        names = rest[0][1].split()
        rest = rest[1:]
    elif len(rest) != n:
        raise InvalidInputError(
            f"Ожидалось {n} строк таблицы (и необязательная строка имён), найдено {len(rest)}"
        )

    table = [_parse_ints(line, no) for no, line in rest]
    group = TableGroup(table, names, name)
    logger.info("Загружена таблица группы %s порядка %s", name, n)
    return group


def load_table(path: str | Path) -> TableGroup:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        logger.error("Не удалось прочитать таблицу %s: %s", path, exc)
        raise InvalidInputError(f"Не удалось прочитать файл {path}: {exc}") from exc
    return parse_table(text, name=path.stem)


# Текст таблицы любой группы
def format_table(group: FiniteGroup) -> str:
    names = [group.element_name(x) for x in group.elements()]
    lines = [str(group.order), " ".join(names)]
    width = len(str(group.order - 1))
    for a in group.elements():
        lines.append(" ".join(str(group.multiply(a, b)).rjust(width) for b in group.elements()))
    return "\n".join(lines) + "\n"


def save_table(group: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(format_table(group), encoding="utf-8")
    logger.info("Таблица группы %s записана в %s", group.name, path)
