"""The versioned analysis report document and its CSV renderings.

Field names are a wire contract consumed by dashboards and spreadsheets;
changing them is a breaking change and requires a version bump.
"""

from __future__ import annotations

import csv
import io
from typing import Sequence

from pydantic import BaseModel, ConfigDict, Field

from .config import RunConfig
from .dataset import AggregatedDataset, ColumnExclusionReport
from .rules import AssociationRule, order_rules

REPORT_VERSION = 1


class ReportItem(BaseModel):
    model_config = ConfigDict(frozen=True)

    column: str
    value: str


class RuleCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_and_y: int
    x: int
    y: int
    total: int


class ReportRule(BaseModel):
    model_config = ConfigDict(frozen=True)

    items: list[ReportItem]
    supp_target: float
    supp_global: float
    confidence: float
    lift: float
    counts: RuleCounts


class AutoExcludedColumn(BaseModel):
    model_config = ConfigDict(frozen=True)

    column: str
    distinct_count: int
    distinct_ratio: float


class ExcludedColumns(BaseModel):
    model_config = ConfigDict(frozen=True)

    user: list[str]
    auto: list[AutoExcludedColumn]


class DatasetSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: int
    groups: int
    positives: int
    negatives: int
    compression_ratio: float
    included_columns: list[str]
    excluded_columns: ExcludedColumns


class ReportDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: int = REPORT_VERSION
    config: RunConfig
    dataset: DatasetSummary
    rules: list[ReportRule]
    timings_ms: dict[str, float] | None = None


def dataset_summary(
    ds: AggregatedDataset, exclusion: ColumnExclusionReport
) -> DatasetSummary:
    rows = ds.source_rows
    groups = ds.group_count
    return DatasetSummary(
        rows=rows,
        groups=groups,
        positives=ds.total_positive,
        negatives=ds.total_negative,
        compression_ratio=rows / groups if groups else 0.0,
        included_columns=list(exclusion.included),
        excluded_columns=ExcludedColumns(
            user=sorted(exclusion.user_excluded),
            auto=[
                AutoExcludedColumn(column=c, distinct_count=n, distinct_ratio=r)
                for c, n, r in exclusion.auto_excluded
            ],
        ),
    )


def build_report(
    rules: Sequence[AssociationRule],
    ds: AggregatedDataset,
    exclusion: ColumnExclusionReport,
    config: RunConfig,
    timings_ms: dict[str, float] | None = None,
) -> ReportDocument:
    """Assemble the ordered report: lift desc, support desc, shorter first."""
    report_rules = []
    for rule in order_rules(rules):
        s = rule.stats
        report_rules.append(
            ReportRule(
                items=[
                    ReportItem(column=ds.item(i).column, value=ds.item(i).value)
                    for i in rule.items
                ],
                supp_target=s.supp_target,
                supp_global=s.supp_global,
                confidence=s.confidence,
                lift=s.lift,
                counts=RuleCounts(
                    x_and_y=s.count_x_and_y, x=s.count_x, y=s.count_y, total=s.total
                ),
            )
        )
    return ReportDocument(
        config=config,
        dataset=dataset_summary(ds, exclusion),
        rules=report_rules,
        timings_ms=timings_ms,
    )


def report_to_json(document: ReportDocument) -> str:
    return document.model_dump_json(indent=2, exclude_none=True) + "\n"


def report_from_json(text: str) -> ReportDocument:
    return ReportDocument.model_validate_json(text)


RULE_CSV_HEADER = [
    "items",
    "length",
    "supp_target",
    "supp_global",
    "confidence",
    "lift",
    "count_x_and_y",
    "count_x",
    "count_y",
    "total",
]


def report_to_csv(document: ReportDocument) -> str:
    """Flat one-rule-per-row table for spreadsheet review."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RULE_CSV_HEADER)
    for rule in document.rules:
        rendered = "; ".join(f"{i.column}={i.value}" for i in rule.items)
        writer.writerow(
            [
                rendered,
                len(rule.items),
                rule.supp_target,
                rule.supp_global,
                rule.confidence,
                rule.lift,
                rule.counts.x_and_y,
                rule.counts.x,
                rule.counts.y,
                rule.counts.total,
            ]
        )
    return buf.getvalue()


def curve_to_csv(points: Sequence[tuple[float, int]]) -> str:
    """The sweep output table; header is part of the contract."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value", "count"])
    for value, count in points:
        writer.writerow([value, count])
    return buf.getvalue()
