"""
Прогон по циклическим экземплярам Γ(Z_n, Z_h): построение графа,
вычисление свойств оракулами и сравнение с замкнутыми формулами.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from closedform import PERFECT_FALSE, PERFECT_TRUE, UNCLASSIFIED, CyclicInstance, classify_formula
from config import PROPERTY_NAMES
from graphcore import (
    SimpleGraph,
    classify_shape,
    find_claw,
    find_induced_cycle,
    find_split_obstruction,
    is_chordal,
    is_connected,
    is_split,
    iter_bits,
    perfectness_obstruction,
    trim_twin_classes,
)
from groups import CyclicGroup, cyclic_subgroup_of_order
from harness.report import ReportRow, SweepConfig, SweepReport, make_row, skipped_row
from ncg import NcGraph, build_gncg
from numthy import proper_divisors_above_one, theta
from utils.validators import CostGuardError, require_within_guard

logger = logging.getLogger(__name__)

SHAPE_PROPERTIES: tuple[str, ...] = (
    "eulerian",
    "star",
    "path",
    "cycle",
    "triangle_free",
    "complete_bipartite",
    "complete",
    "unicyclic",
)

# Свойства формы, у которых есть строка с исходной формулировкой
_SHAPE_PAPER_ROWS = ("eulerian", "triangle_free")


# Список экземпляров прогона
def cyclic_instances(max_n: int, extra: Iterable[tuple[int, int]] = ()) -> list[tuple[int, int]]:
    """Все (n, h) с 3 ≤ n ≤ max_n, h | n, h ≥ 2, затем дополнительные без повторов."""
    pairs = [(n, h) for n in range(3, max_n + 1) for h in proper_divisors_above_one(n)]
    seen = set(pairs)
    for pair in extra:
        CyclicInstance(*pair)
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    return pairs


def _labels(nc: NcGraph, vertices: Sequence[int]) -> str:
    return ";".join(str(o) for o in nc.order_labels(vertices))


def _degree_table_text(table: dict[int, int | str]) -> str:
    return ";".join(f"{d}:{deg}" for d, deg in sorted(table.items()))


def _find_triangle(graph: SimpleGraph) -> tuple[int, int, int] | None:
    for u, v in graph.edges():
        common = graph.adj[u] & graph.adj[v]
        if common:
            return u, v, next(iter_bits(common))
    return None


def _same_order_twin_violation(nc: NcGraph) -> tuple[int, int] | None:
    """Пара вершин одного порядка, не являющихся близнецами."""
    adj = nc.graph.adj
    first: dict[int, int] = {}
    for v, order in enumerate(nc.orders):
        u = first.setdefault(order, v)
        if u == v:
            continue
        if adj[u] & ~(1 << v) != adj[v] & ~(1 << u):
            return u, v
    return None


def _dominance_violation(nc: NcGraph) -> tuple[int, int] | None:
    """x ∈ H, y ∉ H, θ_x = θ_y, но deg(x) ≤ deg(y)."""
    degrees = nc.graph.degrees()
    inside: dict[frozenset[int], list[int]] = {}
    outside: dict[frozenset[int], list[int]] = {}
    for v, (order, in_h) in enumerate(zip(nc.orders, nc.in_h)):
        (inside if in_h else outside).setdefault(theta(order), []).append(v)
    for primes, xs in inside.items():
        for y in outside.get(primes, []):
            for x in xs:
                if degrees[x] <= degrees[y]:
                    return x, y
    return None


# Все строки отчёта для одного экземпляра
def evaluate_instance(
    n: int,
    h: int,
    properties: Sequence[str] = PROPERTY_NAMES,
    perfect_guard: int | None = None,
) -> list[ReportRow]:
    inst = CyclicInstance(n, h)
    pred = classify_formula(inst)
    G = CyclicGroup(n)
    nc = build_gncg(G, cyclic_subgroup_of_order(n, h, G))
    graph = nc.graph
    group, subgroup = G.name, f"Z{h}"
    wanted = set(properties)
    rows: list[ReportRow] = []

    def add(prop: str, predicted, oracle, witness: Sequence[int] = (), unclassified: bool = False) -> None:
        rows.append(
            make_row(n, h, group, subgroup, prop, predicted, oracle, _labels(nc, witness), unclassified)
        )

    degrees = graph.degrees()

    if "degree" in wanted:
        observed: dict[int, int | str] = {}
        for v, order in enumerate(nc.orders):
            if observed.setdefault(order, degrees[v]) != degrees[v]:
                observed[order] = "?"
        mismatched = [
            v for v, order in enumerate(nc.orders) if degrees[v] != pred.degree_table[order]
        ]
        add(
            "degree",
            _degree_table_text(pred.degree_table),
            _degree_table_text(observed),
            mismatched[:1],
        )

    if "min_degree" in wanted:
        v_min = min(range(graph.n), key=degrees.__getitem__)
        add("min_degree", pred.min_degree, degrees[v_min], [v_min])

    if "max_degree" in wanted:
        v_max = max(range(graph.n), key=degrees.__getitem__)
        add("max_degree", pred.max_degree.corrected_value, degrees[v_max], [v_max])
        add("max_degree_paper", pred.max_degree.paper_value, degrees[v_max], [v_max])

    if "connected" in wanted:
        add("connected", pred.flags["connected"], is_connected(graph))

    if wanted & set(SHAPE_PROPERTIES):
        shape = classify_shape(graph).as_dict()
        triangle = _find_triangle(graph) if not shape["triangle_free"] else None
        for name in SHAPE_PROPERTIES:
            if name not in wanted:
                continue
            witness = triangle if name == "triangle_free" and triangle else ()
            add(name, pred.flags[name], shape[name], witness)
            if name in _SHAPE_PAPER_ROWS:
                add(f"{name}_paper", pred.paper_flags[name], shape[name], witness)

    if "split" in wanted:
        split = is_split(graph)
        witness: Sequence[int] = ()
        if not split:
            trimmed, kept = trim_twin_classes(graph, 2)
            found = find_split_obstruction(trimmed)
            if found is not None:
                witness = [kept[v] for v in found[1]]
        add("split", pred.flags["split"], split, witness)
        add("split_paper", pred.paper_flags["split"], split, witness)

    if "claw_free" in wanted:
        trimmed, kept = trim_twin_classes(graph, 3)
        claw = find_claw(trimmed)
        add("claw_free", pred.flags["claw_free"], claw is None, [kept[v] for v in claw or ()])

    if "chordal" in wanted:
        trimmed, kept = trim_twin_classes(graph, 2)
        chordal = is_chordal(trimmed)
        witness = ()
        if not chordal:
            witness = [kept[v] for v in find_induced_cycle(trimmed, min_length=4) or ()]
        add("chordal", pred.flags["chordal"], chordal, witness)

    if wanted & {"perfect", "odd_hole_free"}:
        try:
            obstruction = perfectness_obstruction(graph, guard=perfect_guard)
        except CostGuardError as exc:
            reason = str(exc)
            logger.warning("Экземпляр (%s, %s) пропущен: %s", n, h, reason)
            for name in ("perfect", "odd_hole_free"):
                if name in wanted:
                    rows.append(
                        skipped_row(n, h, group, subgroup, name, getattr(pred, name), reason)
                    )
        else:
            verdict = PERFECT_TRUE if obstruction is None else PERFECT_FALSE
            witness = obstruction.vertices if obstruction is not None else ()
            for name in ("perfect", "odd_hole_free"):
                if name in wanted:
                    predicted = getattr(pred, name)
                    add(name, predicted, verdict, witness, unclassified=predicted == UNCLASSIFIED)

    if "same_order_twins" in wanted:
        pair = _same_order_twin_violation(nc)
        add("same_order_twins", True, pair is None, pair or ())

    if "dominance" in wanted:
        violation = _dominance_violation(nc)
        add("dominance", True, violation is None, violation or ())

    return rows


def _evaluate_task(task: tuple[int, int, tuple[str, ...], int]) -> list[ReportRow]:
    n, h, properties, guard = task
    return evaluate_instance(n, h, properties, guard)


# Прогон по всем циклическим экземплярам
def sweep_cyclic(cfg: SweepConfig) -> SweepReport:
    """
    Строки упорядочены по (n, h, свойство) независимо от числа воркеров.
    Пропуски по лимитам записываются строками со статусом skipped.
    """
    require_within_guard("group", max([cfg.max_n, *(n for n, _ in cfg.extra_instances)]))
    started = time.perf_counter()
    pairs = cyclic_instances(cfg.max_n, cfg.extra_instances)
    tasks = [(n, h, tuple(cfg.properties), cfg.perfect_guard) for n, h in pairs]
    logger.info("Прогон: %s экземпляров, воркеров %s", len(tasks), cfg.workers)

    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_evaluate_task, tasks, chunksize=16))
    else:
        results = [_evaluate_task(task) for task in tasks]

    rows = [row for chunk in results for row in chunk]
    report = SweepReport(cfg.echo(), rows, cfg.allowlist, elapsed=time.perf_counter() - started)
    summary = report.summary()
    logger.info(
        "Прогон завершён: строк %s, расхождений %s, неожиданных %s",
        summary["rows"],
        summary["discrepancies"],
        summary["unexpected"],
    )
    return report

