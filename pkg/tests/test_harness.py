import io
import json

import pytest

from closedform import PERFECT_FALSE
from graphcore import perfectness_obstruction
from harness.report import (
    CSV_HEADER,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
    SweepConfig,
    SweepReport,
    make_row,
    merge_reports,
    render_report,
    write_csv,
)
from harness.sweep import cyclic_instances, evaluate_instance, sweep_cyclic
from harness.verifiers import long_cycle_witness
from numthy import omega_count, proper_divisors_above_one
from utils.validators import InvalidInputError
from tests.helpers import cyclic_gncg

EXPECTED_AT_12 = {
    ("max_degree_paper", 6, 2),
    ("max_degree_paper", 6, 3),
    ("max_degree_paper", 10, 2),
    ("max_degree_paper", 10, 5),
    ("max_degree_paper", 12, 2),
    ("max_degree_paper", 12, 3),
    ("max_degree_paper", 12, 4),
    ("eulerian_paper", 4, 4),
    ("eulerian_paper", 8, 8),
    ("triangle_free_paper", 6, 2),
    ("triangle_free_paper", 10, 2),
    ("triangle_free_paper", 12, 2),
    ("split_paper", 10, 10),
}


def _is_induced_cycle(graph, vertices) -> bool:
    sub = graph.induced(vertices)
    return len(sub.components()) == 1 and all(d == 2 for d in sub.degrees())


# ─── Прогон ───────────────────────────────────────────────────────


def test_discrepancies_at_twelve(sweep_12):
    found = {(d.property, d.n, d.h) for d in sweep_12.discrepancies()}
    assert found == EXPECTED_AT_12
    assert sweep_12.unexpected() == []


def test_paper_max_degree_row(sweep_12):
    row = sweep_12.find(6, 2, "max_degree_paper")
    assert (row.predicted, row.oracle, row.agree) == ("3", "2", STATUS_FAIL)
    assert row.witness == "2"
    corrected = sweep_12.find(6, 2, "max_degree")
    assert corrected.agree == STATUS_PASS


def test_cycle_rows(sweep_12):
    for prop in ("cycle", "unicyclic", "complete"):
        row = sweep_12.find(4, 4, prop)
        assert (row.predicted, row.oracle, row.agree) == ("true", "true", STATUS_PASS)


def test_degree_row_format(sweep_12):
    row = sweep_12.find(6, 6, "degree")
    assert row.predicted == row.oracle == "2:2;3:3;6:4"


def test_counts_cover_every_row(sweep_12):
    counts = sweep_12.counts()
    assert sum(sum(bucket.values()) for bucket in counts.values()) == len(sweep_12.rows)
    assert counts["perfect"][STATUS_PASS] == len(cyclic_instances(12))


def test_sweep_is_deterministic():
    cfg = SweepConfig(max_n=8, workers=1)
    first, second = sweep_cyclic(cfg), sweep_cyclic(cfg)
    assert first.rows == second.rows
    assert render_report(first, "csv") == render_report(second, "csv")


def test_parallel_sweep_matches_serial():
    serial = sweep_cyclic(SweepConfig(max_n=10, workers=1))
    parallel = sweep_cyclic(SweepConfig(max_n=10, workers=2))
    assert serial.rows == parallel.rows


def test_extra_instances_and_property_selection():
    report = sweep_cyclic(
        SweepConfig(max_n=4, extra_instances=((30, 6),), properties=("connected",))
    )
    assert {row.property for row in report.rows} == {"connected"}
    assert report.find(30, 6, "connected").oracle == "false"


def test_guard_skip_is_recorded():
    rows = evaluate_instance(2310, 2310, properties=("perfect",), perfect_guard=1)
    assert len(rows) == 1
    assert rows[0].agree == STATUS_SKIPPED
    assert rows[0].predicted == PERFECT_FALSE
    assert rows[0].witness


# ─── Проверка свидетелей ──────────────────────────────────────────


def _witness_vertices(nc, witness: str) -> list[int]:
    """Вершины по меткам порядков; вершины одного порядка взаимозаменяемы."""
    used: set[int] = set()
    chosen = []
    for order in (int(label) for label in witness.split(";")):
        v = next(v for v, o in enumerate(nc.orders) if o == order and v not in used)
        used.add(v)
        chosen.append(v)
    return chosen


def _check_witness(nc, row) -> str:
    """Перепроверяет свидетеля строки на заново построенном графе; возвращает вид проверки."""
    graph = nc.graph
    prop = row.property.removesuffix("_paper")
    vs = _witness_vertices(nc, row.witness)
    sub = graph.induced(vs)
    degrees = graph.degrees()

    if prop == "degree":
        predicted = dict(item.split(":") for item in row.predicted.split(";"))
        assert str(degrees[vs[0]]) != predicted[str(nc.orders[vs[0]])]
        return "degree"
    if prop in ("min_degree", "max_degree"):
        assert degrees[vs[0]] == int(row.oracle)
        best = min(degrees) if prop == "min_degree" else max(degrees)
        assert degrees[vs[0]] == best
        return "degree"
    assert row.oracle == "false"
    if prop == "triangle_free":
        assert sub.edge_count == 3
        return "triangle"
    if prop == "claw_free":
        assert sorted(sub.degrees()) == [1, 1, 1, 3]
        return "claw"
    if prop == "split":
        two_k2 = len(vs) == 4 and sub.edge_count == 2 and all(d == 1 for d in sub.degrees())
        assert two_k2 or _is_induced_cycle(graph, vs)
        return "split"
    if prop == "chordal":
        assert len(vs) >= 4 and _is_induced_cycle(graph, vs)
        return "cycle"
    if prop in ("perfect", "odd_hole_free"):
        assert len(vs) >= 5 and len(vs) % 2 == 1
        assert _is_induced_cycle(graph, vs) or _is_induced_cycle(graph.complement(), vs)
        return "hole"
    if prop == "same_order_twins":
        u, v = vs
        assert nc.orders[u] == nc.orders[v]
        assert graph.adj[u] & ~(1 << v) != graph.adj[v] & ~(1 << u)
        return "twins"
    if prop == "dominance":
        x, y = vs
        assert nc.in_h[x] and not nc.in_h[y]
        assert degrees[x] <= degrees[y]
        return "dominance"
    raise AssertionError(f"Неожиданный свидетель у свойства {row.property}")


def test_every_witness_rechecks_on_a_fresh_graph():
    report = sweep_cyclic(
        SweepConfig(max_n=30, extra_instances=((420, 210),), allowlist=frozenset())
    )
    failing = {(d.property, d.n, d.h) for d in report.discrepancies()}
    assert {(d.property, d.n, d.h) for d in report.unexpected()} == failing
    assert EXPECTED_AT_12 <= failing

    graphs: dict[tuple[int, int], object] = {}
    kinds = set()
    for row in report.rows:
        assert row.agree != STATUS_SKIPPED
        if not row.witness:
            assert row.agree != STATUS_FAIL or row.property in (
                "eulerian_paper",
                "triangle_free_paper",
                "split_paper",
            )
            continue
        if (row.n, row.h) not in graphs:
            graphs[row.n, row.h] = cyclic_gncg(row.n, row.h)
        kinds.add(_check_witness(graphs[row.n, row.h], row))
    assert {"degree", "triangle", "claw", "split", "cycle", "hole"} <= kinds


def test_skipped_row_witness_names_the_guard():
    rows = evaluate_instance(420, 210, properties=("perfect", "odd_hole_free"), perfect_guard=1)
    assert [row.agree for row in rows] == [STATUS_SKIPPED, STATUS_SKIPPED]
    assert all(row.witness.startswith("Лимит превышен") for row in rows)


def test_cyclic_instances():
    assert cyclic_instances(6) == [(3, 3), (4, 2), (4, 4), (5, 5), (6, 2), (6, 3), (6, 6)]
    assert cyclic_instances(4, [(4, 2), (9, 3)])[-1] == (9, 3)
    with pytest.raises(InvalidInputError):
        cyclic_instances(4, [(12, 5)])


@pytest.mark.parametrize(
    "kwargs",
    [{"max_n": 2}, {"workers": 0}, {"perfect_guard": 0}, {"properties": ("colour",)}],
)
def test_config_validation(kwargs):
    with pytest.raises(InvalidInputError):
        SweepConfig(**kwargs)


# ─── Отчёты ───────────────────────────────────────────────────────


def test_csv_report(sweep_12):
    buffer = io.StringIO()
    write_csv(sweep_12, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == len(sweep_12.rows) + 1


def test_json_report(sweep_12):
    payload = json.loads(render_report(sweep_12, "json"))
    assert payload["summary"]["rows"] == len(payload["rows"])
    assert payload["summary"]["discrepancies"] == len(EXPECTED_AT_12)
    assert payload["summary"]["unexpected"] == 0
    assert payload["summary"]["config"]["max_n"] == 12


def test_unknown_report_format(sweep_12):
    with pytest.raises(InvalidInputError):
        render_report(sweep_12, "xml")


def test_rows_sorted_and_merged():
    rows = [
        make_row(6, 3, "Z6", "Z3", "path", False, False),
        make_row(4, 2, "Z4", "Z2", "path", True, True),
        make_row(6, 2, "Z6", "Z2", "star", True, False),
    ]
    first = SweepReport({}, rows[:2], frozenset())
    second = SweepReport({}, rows[2:], frozenset({"star"}))
    merged = merge_reports([first, second], {"verify": "all"})
    assert [(r.n, r.h) for r in merged.rows] == [(4, 2), (6, 2), (6, 3)]
    assert merged.unexpected() == []
    assert [d.expected for d in merged.discrepancies()] == [True]


# ─── Структурные экземпляры ───────────────────────────────────────


def _cycle_of_orders(nc, orders: list[int]) -> list[int]:
    """Первая вершина каждого порядка; соседние в списке должны быть смежны."""
    cycle = [nc.orders.index(order) for order in orders]
    for u, v in zip(cycle, cycle[1:] + cycle[:1]):
        assert nc.graph.has_edge(u, v)
    return cycle


def test_five_primes_have_long_induced_cycle():
    nc = cyclic_gncg(2310, 2310)
    cycle = long_cycle_witness(nc)
    assert cycle is not None and len(cycle) >= 5
    assert _is_induced_cycle(nc.graph, cycle) or _is_induced_cycle(nc.graph.complement(), cycle)


def test_five_primes_named_pentagon():
    nc = cyclic_gncg(2310, 2310)
    pentagon = _cycle_of_orders(nc, [6, 10, 35, 77, 33])
    assert _is_induced_cycle(nc.graph, pentagon)
    assert perfectness_obstruction(nc.graph) is not None


def test_four_primes_proper_subgroup_has_six_cycle_but_is_perfect():
    nc = cyclic_gncg(210, 30)
    cycle = long_cycle_witness(nc)
    assert cycle is not None
    assert sorted(nc.order_labels(cycle)) == [2, 3, 5, 42, 70, 105]
    assert _is_induced_cycle(nc.graph, cycle)
    hexagon = _cycle_of_orders(nc, [2, 42, 3, 105, 5, 70])
    assert _is_induced_cycle(nc.graph, hexagon)
    assert perfectness_obstruction(nc.graph) is None


def test_four_primes_with_square_is_not_perfect():
    witness = perfectness_obstruction(cyclic_gncg(420, 210).graph)
    assert witness is not None
    assert len(witness.vertices) % 2 == 1


@pytest.mark.parametrize("h", [6, 30, 70])
def test_five_primes_with_small_subgroup_are_perfect(h):
    assert perfectness_obstruction(cyclic_gncg(2310, h).graph) is None


@pytest.mark.slow
def test_five_primes_perfect_for_every_subgroup_with_at_most_three_primes():
    orders = [h for h in proper_divisors_above_one(2310) if omega_count(h) <= 3]
    assert len(orders) == 25
    for h in orders:
        assert perfectness_obstruction(cyclic_gncg(2310, h).graph) is None, h


@pytest.mark.slow
def test_sweep_up_to_two_hundred_has_only_expected_discrepancies():
    report = sweep_cyclic(SweepConfig(max_n=200, workers=2))
    assert report.unexpected() == []
    assert not [row for row in report.rows if row.agree == STATUS_SKIPPED]
    paper_rows = {d.property for d in report.discrepancies()}
    assert paper_rows <= {"max_degree_paper", "eulerian_paper", "triangle_free_paper", "split_paper"}
