"""
Модуль форматирования текстового вывода CLI.
Таблица предсказаний и оракулов, трасса редукции, сводка прогона.
"""

from typing import Sequence

from closedform import PropertyPrediction
from graphcore import ReductionTrace, SimpleGraph
from harness.report import (
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
    STATUS_UNCLASSIFIED,
    ReportRow,
    SweepReport,
)

SEPARATOR = "━━━━━━━━━━━━━━━━━━━━"

STATUS_MARK: dict[str, str] = {
    STATUS_PASS: "✅",
    STATUS_FAIL: "❌",
    STATUS_UNCLASSIFIED: "❔",
    STATUS_SKIPPED: "⏭",
}


# Таблица «свойство / предсказание / оракул» для одного экземпляра
def format_classification(prediction: PropertyPrediction, rows: Sequence[ReportRow]) -> str:
    """
    Форматирует предсказание для (n, h) рядом с вердиктами оракулов.
    Строки с исходной формулировкой помечены суффиксом _paper.
    """
    inst = prediction.instance
    msg = (
        f"📐 Γ(Z{inst.n}, Z{inst.h})\n"
        f"{SEPARATOR}\n"
        f"r = {inst.r}, ω(h) = {inst.omega_h}, "
        f"Δ = {prediction.max_degree.corrected_value} "
        f"(в исходной формулировке {prediction.max_degree.paper_value}), "
        f"δ = {prediction.min_degree}\n\n"
    )

    width = max((len(row.property) for row in rows), default=8)
    for row in rows:
        mark = STATUS_MARK.get(row.agree, "?")
        line = f"  {mark} {row.property.ljust(width)}  {row.predicted:>14}  {row.oracle:>14}"
        # Свидетель показываем только для несовпадений
        if row.witness and row.agree != STATUS_PASS:
            line += f"  [{row.witness}]"
        msg += line + "\n"

    return msg.rstrip()


# Трасса редукции близнецов
def format_reduction(
    trace: ReductionTrace,
    labels: Sequence[str],
    pruned: SimpleGraph,
) -> str:
    """labels — подписи вершин исходного графа."""
    msg = f"🔻 Редукция близнецов\n{SEPARATOR}\n"
    if not trace.steps:
        msg += "  близнецов нет\n"
    for kept, removed, kind in trace.steps:
        kind_text = "открытые" if kind == "open" else "замкнутые"
        msg += f"  {labels[removed]} → {labels[kept]} ({kind_text})\n"

    reduced = trace.graph
    msg += (
        f"\nПосле редукции: {reduced.n} вершин, {reduced.edge_count} рёбер\n"
        f"После отсечения: {pruned.n} вершин, {pruned.edge_count} рёбер\n"
    )
    for u, v in pruned.edges():
        msg += f"  {pruned.labels[u]} — {pruned.labels[v]}\n"
    return msg.rstrip()


# Сводка прогона или проверки
def format_report_summary(report: SweepReport) -> str:
    summary = report.summary()
    msg = (
        f"📊 Итоги: {summary['rows']} строк, {summary['elapsed']} с\n"
        f"{SEPARATOR}\n"
    )
    for prop, counts in summary["counts"].items():
        parts = [f"{STATUS_MARK[status]} {count}" for status, count in counts.items() if count]
        msg += f"  {prop}: {' '.join(parts)}\n"

    discrepancies = report.discrepancies()
    if discrepancies:
        msg += f"\n⚠️ Расхождений: {len(discrepancies)} (неожиданных: {summary['unexpected']})\n"
        # Показываем первые 10 неожиданных
        for record in report.unexpected()[:10]:
            msg += (
                f"  ({record.n}, {record.h}) {record.group}/{record.subgroup} "
                f"{record.property}: {record.predicted} ≠ {record.oracle}\n"
            )
        if len(report.unexpected()) > 10:
            msg += f"  ...и ещё {len(report.unexpected()) - 10}\n"

    return msg.rstrip()
