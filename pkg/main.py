"""
Точка входа CLI ncgraph: построение обобщённых графов некопростоты,
классификация, прогоны и проверки теорем.
"""

import argparse
import logging
import sys
from typing import Sequence

from config import EXIT_COST_GUARD, EXIT_INVALID_INPUT
from utils.validators import CostGuardError, InvalidInputError, NcgError

# Импортируем обработчики
from handlers import build, classify, reduce, sweep

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """Ошибки разбора аргументов — некорректный ввод с кодом выхода 1."""

    def error(self, message: str) -> None:
        raise InvalidInputError(message)


def build_parser() -> CliParser:
    parser = CliParser(prog="ncgraph", description="Обобщённые графы некопростоты конечных групп")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    # ─── Регистрация подкоманд ──────────────────────────────────
    build.register(subparsers)
    classify.register(subparsers)
    sweep.register(subparsers)
    reduce.register(subparsers)
    return parser


# Разбор аргументов и запуск подкоманды
def main(argv: Sequence[str] | None = None) -> int:
    """Возвращает код выхода: 0, 1 (ввод), 2 (лимит), 3 (неожиданные расхождения)."""
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except CostGuardError as exc:
        logger.error("Превышен лимит вычислений: %s", exc)
        return EXIT_COST_GUARD
    except InvalidInputError as exc:
        logger.error("Некорректный ввод: %s", exc)
        return EXIT_INVALID_INPUT
    except NcgError as exc:
        logger.error("Ошибка: %s", exc)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
