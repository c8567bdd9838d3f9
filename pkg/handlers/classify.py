"""
Обработчик команды classify: предсказания замкнутых формул для
Γ(Z_n, Z_h) рядом с вердиктами оракулов.
"""

import argparse
import logging

from closedform import CyclicInstance, classify_formula
from config import COST_GUARDS, EXIT_OK
from handlers.build import emit_output
from harness.sweep import evaluate_instance
from utils.formatters import format_classification

logger = logging.getLogger(__name__)


def classify_command(args: argparse.Namespace) -> int:
    inst = CyclicInstance(args.cyclic, args.h)
    prediction = classify_formula(inst)
    rows = evaluate_instance(inst.n, inst.h, perfect_guard=args.perfect_guard)
    logger.info("Классификация (%s, %s): %s свойств", inst.n, inst.h, len(rows))
    emit_output(format_classification(prediction, rows) + "\n", args.output)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="предсказание и оракулы для Γ(Z_n, Z_h)")
    parser.add_argument("--cyclic", type=int, metavar="N", required=True)
    parser.add_argument("--h", type=int, metavar="M", required=True)
    parser.add_argument("--perfect-guard", type=int, default=COST_GUARDS["perfect"])
    parser.add_argument("--output", metavar="PATH")
    parser.set_defaults(handler=classify_command)
