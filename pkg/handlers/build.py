"""
Обработчик команды build: выбор группы и подгруппы, построение графа
и вывод в DOT или JSON.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from config import EXIT_OK
from groups import (
    CyclicGroup,
    FiniteGroup,
    SubgroupRef,
    all_subgroups,
    catalog_group,
    cyclic_subgroup_of_order,
)
from ncg import build_gncg, build_tagged_coprime, commuting_graph, gk_graph
from utils.graph_export import gncg_payload, graph_payload, tagged_payload, to_dot, to_json
from utils.table_io import load_table
from utils.validators import InvalidInputError, require_within_guard

logger = logging.getLogger(__name__)

GRAPH_KINDS: tuple[str, ...] = ("gncg", "tagged", "gk", "commuting")


# ─── Общие селекторы для команд ───────────────────────────────────


def add_group_arguments(parser: argparse.ArgumentParser, subgroups: bool = True) -> None:
    selector = parser.add_mutually_exclusive_group(required=True)
    selector.add_argument("--cyclic", type=int, metavar="N", help="циклическая группа Z_N")
    selector.add_argument("--table", metavar="FILE", help="файл таблицы умножения")
    selector.add_argument("--product", metavar="SPEC", help="прямое произведение, например Z2xZ4")
    selector.add_argument("--catalog", metavar="NAME", help="группа из каталога: S3, Q8, D4, ...")
    if subgroups:
        sub = parser.add_mutually_exclusive_group()
        sub.add_argument("--h", type=int, metavar="M", help="подгруппа порядка M")
        sub.add_argument("--subgroup-index", type=int, metavar="K", help="K-я подгруппа в списке")
        sub.add_argument("--all-subgroups", action="store_true", help="все подгруппы порядка ≥ 2")


# Группа по аргументам командной строки
def resolve_group(args: argparse.Namespace) -> FiniteGroup:
    if args.cyclic is not None:
        if args.cyclic < 2:
            raise InvalidInputError(f"Порядок циклической группы должен быть ≥ 2, получено {args.cyclic}")
        require_within_guard("group", args.cyclic)
        return CyclicGroup(args.cyclic)
    if args.table is not None:
        return load_table(args.table)
    return catalog_group(args.product if args.product is not None else args.catalog)


# Подгруппы по аргументам командной строки
def resolve_subgroups(args: argparse.Namespace, G: FiniteGroup) -> list[SubgroupRef]:
    """
    --h для циклической группы даёт единственную подгруппу порядка M,
    для остальных — первую в списке all_subgroups.
    """
    if getattr(args, "h", None) is not None:
        if isinstance(G, CyclicGroup):
            return [cyclic_subgroup_of_order(G.order, args.h, G)]
        for H in all_subgroups(G):
            if H.order == args.h:
                return [H]
        raise InvalidInputError(f"В группе {G.name} нет подгруппы порядка {args.h}")
    if getattr(args, "subgroup_index", None) is not None:
        subgroups = all_subgroups(G)
        if not 0 <= args.subgroup_index < len(subgroups):
            raise InvalidInputError(
                f"Индекс подгруппы {args.subgroup_index} вне 0..{len(subgroups) - 1}"
            )
        return [subgroups[args.subgroup_index]]
    if getattr(args, "all_subgroups", False):
        return [H for H in all_subgroups(G) if H.order >= 2]
    raise InvalidInputError("Нужно выбрать подгруппу: --h, --subgroup-index или --all-subgroups")


# Запись результата в файл или stdout
def emit_output(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        logger.error("Не удалось записать %s: %s", output, exc)
        raise InvalidInputError(f"Не удалось записать файл {output}: {exc}") from exc
    logger.info("Результат записан в %s", output)


# ─── Команда build ────────────────────────────────────────────────


def _payloads(args: argparse.Namespace, G: FiniteGroup) -> list[tuple[str, dict]]:
    if args.graph == "gk":
        graph = gk_graph(G)
        primes = [int(label) for label in graph.labels]
        return [(f"GK_{G.name}", graph_payload(graph, primes, primes, [False] * graph.n, G.order, 0))]
    if args.graph == "commuting":
        graph = commuting_graph(G)
        index = {G.element_name(x): x for x in G.elements()}
        ids = [index[label] for label in graph.labels]
        orders = [G.orders[x] for x in ids]
        return [(f"C_{G.name}", graph_payload(graph, ids, orders, [False] * graph.n, G.order, 0))]

    result = []
    for H in resolve_subgroups(args, G):
        name = f"{G.name}_{H.order}"
        if args.graph == "tagged":
            result.append((name, tagged_payload(build_tagged_coprime(G, H), H.order)))
        else:
            result.append((name, gncg_payload(build_gncg(G, H))))
    return result


def build_command(args: argparse.Namespace) -> int:
    """Строит выбранный граф и выводит его."""
    G = resolve_group(args)
    payloads = _payloads(args, G)
    logger.info("Построено графов: %s для группы %s", len(payloads), G.name)

    if args.format == "dot":
        text = "".join(to_dot(payload, name) for name, payload in payloads)
    elif len(payloads) == 1:
        text = to_json(payloads[0][1])
    else:
        text = json.dumps([payload for _, payload in payloads], ensure_ascii=False, indent=2) + "\n"

    emit_output(text, args.output)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("build", help="построить граф и вывести в DOT или JSON")
    add_group_arguments(parser)
    parser.add_argument("--graph", choices=GRAPH_KINDS, default="gncg")
    parser.add_argument("--format", choices=("dot", "json"), default="json")
    parser.add_argument("--output", metavar="PATH")
    parser.set_defaults(handler=build_command)
