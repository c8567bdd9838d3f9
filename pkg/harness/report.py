"""
Структуры отчётов прогона и их запись в CSV и JSON.
Строка отчёта — одна пара (экземпляр, свойство).
"""

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass
from datetime import datetime
from typing import Any, TextIO

import pytz

from config import (
    COST_GUARDS,
    DEFAULT_ALLOWLIST,
    DEFAULT_MAX_N,
    DEFAULT_WORKERS,
    PROPERTY_NAMES,
    REPORT_TIMEZONE,
)
from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)

CSV_HEADER: tuple[str, ...] = (
    "n",
    "h",
    "group",
    "subgroup",
    "property",
    "predicted",
    "oracle",
    "agree",
    "witness",
)

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_UNCLASSIFIED = "unclassified"
STATUS_SKIPPED = "skipped"
STATUSES: tuple[str, ...] = (STATUS_PASS, STATUS_FAIL, STATUS_UNCLASSIFIED, STATUS_SKIPPED)


@dataclass
class SweepConfig:
    max_n: int = DEFAULT_MAX_N
    extra_instances: tuple[tuple[int, int], ...] = ()
    properties: tuple[str, ...] = PROPERTY_NAMES
    perfect_guard: int = COST_GUARDS["perfect"]
    workers: int = DEFAULT_WORKERS
    allowlist: frozenset[str] = DEFAULT_ALLOWLIST

    def __post_init__(self) -> None:
        if self.max_n < 3:
            raise InvalidInputError(f"max_n должен быть ≥ 3, получено {self.max_n}")
        if self.perfect_guard < 1 or self.workers < 1:
            raise InvalidInputError("Лимиты и число воркеров должны быть положительными")
        unknown = set(self.properties) - set(PROPERTY_NAMES)
        if unknown:
            raise InvalidInputError(f"Неизвестные свойства: {', '.join(sorted(unknown))}")

    def echo(self) -> dict[str, Any]:
        return {
            "max_n": self.max_n,
            "extra_instances": [list(pair) for pair in self.extra_instances],
            "properties": list(self.properties),
            "perfect_guard": self.perfect_guard,
            "workers": self.workers,
            "allowlist": sorted(self.allowlist),
        }


@dataclass(frozen=True)
class ReportRow:
    n: int
    h: int
    group: str
    subgroup: str
    property: str
    predicted: str
    oracle: str
    agree: str
    witness: str = ""

    def sort_key(self) -> tuple:
        return (self.n, self.h, self.group, self.subgroup, self.property)


@dataclass(frozen=True)
class DiscrepancyRecord:
    """Расхождение предсказания с оракулом; expected — класс из списка ожидаемых."""

    n: int
    h: int
    group: str
    subgroup: str
    property: str
    predicted: str
    oracle: str
    witness: str
    expected: bool


# Приведение значения к строке отчёта
def fmt_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


# Строка сравнения предсказания и оракула
def make_row(
    n: int,
    h: int,
    group: str,
    subgroup: str,
    prop: str,
    predicted: Any,
    oracle: Any,
    witness: str = "",
    unclassified: bool = False,
) -> ReportRow:
    predicted_text, oracle_text = fmt_value(predicted), fmt_value(oracle)
    if unclassified:
        agree = STATUS_UNCLASSIFIED
    else:
        agree = STATUS_PASS if predicted_text == oracle_text else STATUS_FAIL
    return ReportRow(n, h, group, subgroup, prop, predicted_text, oracle_text, agree, witness)


def skipped_row(n: int, h: int, group: str, subgroup: str, prop: str, predicted: Any, reason: str) -> ReportRow:
    return ReportRow(n, h, group, subgroup, prop, fmt_value(predicted), "", STATUS_SKIPPED, reason)


@dataclass
class SweepReport:
    config: dict[str, Any]
    rows: list[ReportRow]
    allowlist: frozenset[str] = DEFAULT_ALLOWLIST
    generated_at: str = ""
    elapsed: float = 0.0

    def __post_init__(self) -> None:
        self.rows = sorted(self.rows, key=ReportRow.sort_key)
        if not self.generated_at:
            self.generated_at = datetime.now(pytz.timezone(REPORT_TIMEZONE)).isoformat()

    # Счётчики по свойствам
    def counts(self) -> dict[str, dict[str, int]]:
        result: dict[str, dict[str, int]] = {}
        for row in self.rows:
            bucket = result.setdefault(row.property, dict.fromkeys(STATUSES, 0))
            bucket[row.agree] += 1
        return dict(sorted(result.items()))

    def discrepancies(self) -> list[DiscrepancyRecord]:
        return [
            DiscrepancyRecord(
                row.n, row.h, row.group, row.subgroup, row.property,
                row.predicted, row.oracle, row.witness,
                expected=row.property in self.allowlist,
            )
            for row in self.rows
            if row.agree == STATUS_FAIL
        ]

    def unexpected(self) -> list[DiscrepancyRecord]:
        return [record for record in self.discrepancies() if not record.expected]

    def rows_for(self, prop: str) -> list[ReportRow]:
        return [row for row in self.rows if row.property == prop]

    def find(self, n: int, h: int, prop: str) -> ReportRow | None:
        for row in self.rows:
            if (row.n, row.h, row.property) == (n, h, prop):
                return row
        return None

    def summary(self) -> dict[str, Any]:
        discrepancies = self.discrepancies()
        return {
            "config": self.config,
            "counts": self.counts(),
            "rows": len(self.rows),
            "discrepancies": len(discrepancies),
            "unexpected": sum(1 for d in discrepancies if not d.expected),
            "generated_at": self.generated_at,
            "elapsed": round(self.elapsed, 3),
        }


# Объединение отчётов
def merge_reports(reports: list[SweepReport], config: dict[str, Any]) -> SweepReport:
    rows = [row for report in reports for row in report.rows]
    allowlist = frozenset().union(*(report.allowlist for report in reports)) if reports else DEFAULT_ALLOWLIST
    return SweepReport(config, rows, allowlist, elapsed=sum(r.elapsed for r in reports))


# ─── Запись отчётов ───────────────────────────────────────────────


def write_csv(report: SweepReport, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow([getattr(row, column) for column in CSV_HEADER])


def write_json(report: SweepReport, stream: TextIO) -> None:
    payload = {
        "summary": report.summary(),
        "rows": [asdict(row) for row in report.rows],
    }
    json.dump(payload, stream, ensure_ascii=False, indent=2)
    stream.write("\n")


# Отчёт в виде строки в нужном формате
def render_report(report: SweepReport, fmt: str) -> str:
    buffer = io.StringIO()
    if fmt == "csv":
        write_csv(report, buffer)
    elif fmt == "json":
        write_json(report, buffer)
    else:
        raise InvalidInputError(f"Неизвестный формат отчёта: {fmt}")
    return buffer.getvalue()
