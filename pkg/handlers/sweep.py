"""
Обработчики команд sweep и verify: прогон по циклическим экземплярам,
проверки теорем на каталоге и запись отчёта в CSV или JSON.
"""

import argparse
import logging
import sys

from config import (
    COST_GUARDS,
    DEFAULT_ALLOWLIST,
    DEFAULT_MAX_N,
    DEFAULT_WORKERS,
    EXIT_DISCREPANCY,
    EXIT_OK,
    GROUP_SELECTORS,
    PROPERTY_NAMES,
)
from handlers.build import emit_output
from harness.report import SweepConfig, SweepReport, merge_reports, render_report
from harness.sweep import sweep_cyclic
from harness.verifiers import (
    verify_eppo,
    verify_four_primes,
    verify_gk,
    verify_nilpotent,
    verify_tagged,
)
from utils.formatters import format_report_summary
from utils.validators import parse_instance, parse_property_list

logger = logging.getLogger(__name__)


# Список ожидаемых расхождений с учётом флагов
def resolve_allowlist(args: argparse.Namespace) -> frozenset[str]:
    base = frozenset() if args.no_default_allowlist else DEFAULT_ALLOWLIST
    return base | frozenset(args.allow or ())


# Вывод отчёта и код выхода
def finish(report: SweepReport, args: argparse.Namespace) -> int:
    emit_output(render_report(report, args.format), args.output)
    sys.stderr.write(format_report_summary(report) + "\n")
    unexpected = report.unexpected()
    if unexpected:
        logger.warning("Неожиданных расхождений: %s", len(unexpected))
        return EXIT_DISCREPANCY
    return EXIT_OK


def sweep_command(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        max_n=args.max_n,
        extra_instances=tuple(parse_instance(text) for text in args.extra or ()),
        properties=parse_property_list(args.properties, PROPERTY_NAMES),
        perfect_guard=args.perfect_guard,
        workers=args.workers,
        allowlist=resolve_allowlist(args),
    )
    return finish(sweep_cyclic(cfg), args)


# Запуск проверок по селектору каталога
def run_verifiers(selector: str, allowlist: frozenset[str], max_n: int) -> SweepReport:
    runners = {
        "nilpotent": lambda: verify_nilpotent(allowlist=allowlist),
        "tagged": lambda: verify_tagged(allowlist=allowlist),
        "eppo": lambda: verify_eppo(allowlist=allowlist),
        "gk": lambda: verify_gk(max_n=max_n, allowlist=allowlist),
        "four-primes": lambda: verify_four_primes(allowlist=allowlist),
    }
    chosen = list(runners) if selector == "all" else [selector]
    reports = [runners[name]() for name in chosen]
    if len(reports) == 1:
        return reports[0]
    return merge_reports(reports, {"verify": selector, "max_n": max_n})


def verify_command(args: argparse.Namespace) -> int:
    report = run_verifiers(args.catalog, resolve_allowlist(args), args.max_n)
    return finish(report, args)


def _add_report_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", metavar="PATH")
    parser.add_argument("--allow", action="append", metavar="CLASS",
                        help="дополнительный ожидаемый класс расхождений")
    parser.add_argument("--no-default-allowlist", action="store_true")


def register(subparsers) -> None:
    sweep = subparsers.add_parser("sweep", help="прогон по Γ(Z_n, Z_h)")
    sweep.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    sweep.add_argument("--extra", action="append", metavar="N:H")
    sweep.add_argument("--properties", metavar="A,B", help="подмножество свойств через запятую")
    sweep.add_argument("--perfect-guard", type=int, default=COST_GUARDS["perfect"])
    sweep.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    _add_report_arguments(sweep)
    sweep.set_defaults(handler=sweep_command)

    verify = subparsers.add_parser("verify", help="проверки теорем на каталоге групп")
    verify.add_argument("--catalog", choices=GROUP_SELECTORS, default="all")
    verify.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                        help="граница n для циклических групп в проверке gk")
    _add_report_arguments(verify)
    verify.set_defaults(handler=verify_command)
