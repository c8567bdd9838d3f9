"""
Конфигурация ncgraph — построения и проверки обобщённых графов некопростоты.
Загрузка переменных окружения и константы приложения.
"""

import os
import logging
from dotenv import load_dotenv

# Загружаем переменные окружения из .env файла
load_dotenv()

# Уровень логирования
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

# Режим отладки
DEBUG: bool = os.getenv("DEBUG", "False").lower() in ("true", "1", "yes")

# Часовой пояс для отметок времени в отчётах
REPORT_TIMEZONE: str = os.getenv("REPORT_TIMEZONE", "Europe/Moscow")

# Количество воркеров для прогонов по умолчанию
DEFAULT_WORKERS: int = int(os.getenv("NCG_WORKERS", "1"))

# Верхняя граница n для прогона циклических групп по умолчанию
DEFAULT_MAX_N: int = int(os.getenv("NCG_MAX_N", "200"))

# Перепроверка поиска дыр на графе без отсечения вершин
PRUNE_CROSS_CHECK: bool = os.getenv("NCG_PRUNE_CROSS_CHECK", "True").lower() in (
    "true",
    "1",
    "yes",
)

# ─── Лимиты вычислений ────────────────────────────────────────────

COST_GUARDS: dict[str, int] = {
    # вершин в редуцированном графе для поиска нечётных дыр
    "perfect": int(os.getenv("NCG_PERFECT_GUARD", "48")),
    # вершин для проверки изоморфизма
    "isomorphism": int(os.getenv("NCG_ISO_GUARD", "64")),
    # порядок группы для перечисления подгрупп
    "subgroups": int(os.getenv("NCG_SUBGROUP_GUARD", "64")),
    # порядок прямого произведения
    "product": int(os.getenv("NCG_PRODUCT_GUARD", "10000")),
    # порядок группы, для которой строится граф
    "group": int(os.getenv("NCG_GROUP_GUARD", "10000")),
}

GUARD_TEXT: dict[str, str] = {
    "perfect": "вершин в графе после редукции",
    "isomorphism": "вершин для проверки изоморфизма",
    "subgroups": "порядок группы для перечисления подгрупп",
    "product": "порядок прямого произведения",
    "group": "порядок группы",
}

# ─── Свойства в отчётах прогона ───────────────────────────────────

PROPERTY_NAMES: tuple[str, ...] = (
    "degree",
    "min_degree",
    "max_degree",
    "connected",
    "eulerian",
    "star",
    "path",
    "cycle",
    "triangle_free",
    "complete_bipartite",
    "complete",
    "unicyclic",
    "split",
    "claw_free",
    "chordal",
    "perfect",
    "odd_hole_free",
    "same_order_twins",
    "dominance",
)

# Свойства, для которых формулировка в исходных утверждениях отличается от проверенной
PAPER_PROPERTIES: tuple[str, ...] = (
    "max_degree_paper",
    "eulerian_paper",
    "triangle_free_paper",
    "split_paper",
)

# Ожидаемые классы расхождений
DEFAULT_ALLOWLIST: frozenset[str] = frozenset(
    PAPER_PROPERTIES + ("eppo_connected_paper", "negative_control_isomorphic")
)

# Селекторы каталога для verify
GROUP_SELECTORS: tuple[str, ...] = (
    "nilpotent",
    "tagged",
    "eppo",
    "gk",
    "four-primes",
    "all",
)

# ─── Коды выхода ──────────────────────────────────────────────────

EXIT_OK: int = 0
EXIT_INVALID_INPUT: int = 1
EXIT_COST_GUARD: int = 2
EXIT_DISCREPANCY: int = 3

# ─── Настройка логирования ─────────────────────────────────────────

logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    level=logging.DEBUG if DEBUG else getattr(logging, LOG_LEVEL.upper(), logging.INFO),
)
logger = logging.getLogger(__name__)
