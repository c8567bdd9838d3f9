"""
Обработчик команды reduce: трасса редукции близнецов и граф после отсечения.
"""

import argparse
import logging
import random

from config import EXIT_OK
from graphcore import hole_prune, twin_reduce
from handlers.build import add_group_arguments, emit_output, resolve_group, resolve_subgroups
from ncg import build_gncg
from utils.formatters import format_reduction

logger = logging.getLogger(__name__)


def reduce_command(args: argparse.Namespace) -> int:
    G = resolve_group(args)
    rng = random.Random(args.seed) if args.seed is not None else None
    parts = []
    for H in resolve_subgroups(args, G):
        nc = build_gncg(G, H)
        trace = twin_reduce(nc.graph, rng)
        pruned = hole_prune(trace.graph, single_pass=args.single_pass)
        labels = [f"{label}:{order}" for label, order in zip(nc.graph.labels, nc.orders)]
        header = f"Γ({G.name}, |H| = {H.order})\n"
        parts.append(header + format_reduction(trace, labels, pruned))
    emit_output("\n\n".join(parts) + "\n", args.output)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("reduce", help="редукция близнецов и отсечение вершин")
    add_group_arguments(parser)
    parser.add_argument("--seed", type=int, help="случайный порядок удаления близнецов")
    parser.add_argument(
        "--single-pass",
        action="store_true",
        help="проверять условия отсечения один раз по исходному графу",
    )
    parser.add_argument("--output", metavar="PATH")
    parser.set_defaults(handler=reduce_command)
