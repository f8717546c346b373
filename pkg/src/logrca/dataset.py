"""Structured-log ingestion and weighted pre-aggregation.

A structured log is a plain table of text tokens. Before mining, rows are
reduced to weighted groups: identical rows (over the included feature
columns) collapse into one record carrying a positive weight (rows whose
label equals the target value) and a negative weight (all other rows).
Column=value pairs are interned as dense integer items so that miners work
on small sorted integer tuples.
"""

from __future__ import annotations

import csv
import io
import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Sequence

from .errors import ConfigError, ParseError, SchemaError, TargetAbsentError

# Reserved null token: an absent or empty value. Null values produce no item
# unless null_as_item is requested, in which case they intern with this
# rendered value.
NULL: Optional[str] = None
NULL_ITEM_VALUE = ""


@dataclass(frozen=True)
class StructuredLog:
    """A tabular log: named columns, rows of text tokens, one label column."""

    columns: tuple[str, ...]
    rows: tuple[tuple[Optional[str], ...], ...]
    label_column: str

    def __post_init__(self):
        if self.label_column not in self.columns:
            raise SchemaError(f"label column {self.label_column!r} not in columns")
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise SchemaError(f"row {i + 1} has {len(row)} values, expected {width}")

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise SchemaError(f"unknown column {name!r}") from None

    def feature_columns(self) -> tuple[str, ...]:
        return tuple(c for c in self.columns if c != self.label_column)


@dataclass(frozen=True)
class ColumnExclusionReport:
    """Partition of the non-label columns into user/auto-excluded and included."""

    user_excluded: frozenset[str]
    auto_excluded: tuple[tuple[str, int, float], ...]  # (column, distinct_count, distinct_ratio)
    included: tuple[str, ...]


@dataclass(frozen=True)
class Item:
    """One interned column=value pair."""

    id: int
    column: str
    value: str

    def render(self) -> str:
        return f"{self.column}={self.value}"


@dataclass(frozen=True)
class AggregatedDataset:
    """Weighted transaction database over interned items.

    ``groups`` holds (sorted item-id tuple, positive_weight, negative_weight)
    records. When built by :func:`pre_aggregate` the item tuples are unique;
    :func:`row_dataset` deliberately keeps one unit-weight group per row for
    benchmarking the unaggregated path, so uniqueness is not assumed by
    consumers.
    """

    items: tuple[Item, ...]
    groups: tuple[tuple[tuple[int, ...], int, int], ...]
    total_positive: int
    total_negative: int
    source_rows: int = 0

    _group_sets: tuple[frozenset[int], ...] = field(
        default=(), repr=False, compare=False
    )

    def __post_init__(self):
        if not self._group_sets:
            object.__setattr__(
                self, "_group_sets", tuple(frozenset(g) for g, _, _ in self.groups)
            )

    @property
    def group_count(self) -> int:
        return len(self.groups)

    @property
    def item_count(self) -> int:
        return len(self.items)

    def item(self, item_id: int) -> Item:
        return self.items[item_id]

    def column_of(self, item_id: int) -> str:
        return self.items[item_id].column

    def item_column_ids(self) -> tuple[int, ...]:
        """Dense column index per item id, for same-column exclusion checks."""
        columns: dict[str, int] = {}
        out = []
        for it in self.items:
            out.append(columns.setdefault(it.column, len(columns)))
        return tuple(out)

    def group_item_sets(self) -> tuple[frozenset[int], ...]:
        return self._group_sets

    def positive_groups(self) -> list[tuple[frozenset[int], int]]:
        """(item set, positive weight) for groups with positive weight > 0."""
        return [
            (s, pw)
            for s, (_, pw, _) in zip(self._group_sets, self.groups)
            if pw > 0
        ]

    def render_items(self, item_ids: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.items[i].render() for i in item_ids)


def _decode(source: IO) -> io.TextIOBase:
    raw = source.read()
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8-sig")
    return io.StringIO(raw)


def _stringify_scalar(value, line: int) -> Optional[str]:
    if value is None:
        return NULL
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    raise ParseError(f"value {value!r} is not a scalar", line=line)


def load_structured_log(source: IO, format: str, label_column: str) -> StructuredLog:
    """Parse a CSV or JSONL byte/text stream into a StructuredLog.

    Empty CSV fields and missing JSONL keys become the null token. Raises
    ParseError with the offending line number on malformed input and
    SchemaError when the label column is absent.
    """
    if format == "csv":
        return _load_csv(source, label_column)
    if format == "jsonl":
        return _load_jsonl(source, label_column)
    raise ConfigError(f"unknown input format {format!r}", flag="--format")


def _load_csv(source: IO, label_column: str) -> StructuredLog:
    text = _decode(source)
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty input: no header line") from None
    except csv.Error as exc:
        raise ParseError(str(exc), line=1) from None
    columns = tuple(header)
    if len(set(columns)) != len(columns):
        raise SchemaError("duplicate column names in header")
    if label_column not in columns:
        raise SchemaError(f"label column {label_column!r} not in header")
    width = len(columns)
    rows = []
    try:
        for record in reader:
            if len(record) != width:
                raise ParseError(
                    f"expected {width} fields, found {len(record)}",
                    line=reader.line_num,
                )
            rows.append(tuple(v if v != "" else NULL for v in record))
    except csv.Error as exc:
        raise ParseError(str(exc), line=reader.line_num) from None
    return StructuredLog(columns=columns, rows=tuple(rows), label_column=label_column)


def _load_jsonl(source: IO, label_column: str) -> StructuredLog:
    text = _decode(source)
    columns: list[str] = []
    seen: set[str] = set()
    records: list[tuple[int, dict]] = []
    for lineno, line in enumerate(text, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=lineno) from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", line=lineno)
        for key in obj:
            if key not in seen:
                seen.add(key)
                columns.append(key)
        records.append((lineno, obj))
    if label_column not in seen:
        raise SchemaError(f"label column {label_column!r} not present in any record")
    rows = tuple(
        tuple(_stringify_scalar(obj.get(c), lineno) for c in columns)
        for lineno, obj in records
    )
    return StructuredLog(columns=tuple(columns), rows=rows, label_column=label_column)


def bucketize_numeric(
    log: StructuredLog,
    column: str,
    thresholds: Sequence[float],
    labels: Sequence[str],
) -> StructuredLog:
    """Replace a numeric column with interval labels.

    Half-open intervals: value < thresholds[0] maps to labels[0];
    thresholds[i-1] <= value < thresholds[i] maps to labels[i]; values at or
    above the last threshold map to the last label. Nulls pass through.
    """
    if not thresholds:
        raise ConfigError("at least one threshold required", flag="--bucketize")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ConfigError("thresholds must be strictly ascending", flag="--bucketize")
    if len(labels) != len(thresholds) + 1:
        raise ConfigError(
            f"need {len(thresholds) + 1} labels for {len(thresholds)} thresholds",
            flag="--bucketize",
        )
    idx = log.column_index(column)
    thresholds = list(thresholds)
    new_rows = []
    for rowno, row in enumerate(log.rows, start=1):
        value = row[idx]
        if value is NULL:
            new_rows.append(row)
            continue
        try:
            number = float(value)
        except ValueError:
            raise ParseError(
                f"column {column!r}: cannot convert {value!r} to a number",
                line=rowno,
            ) from None
        if math.isnan(number):
            raise ParseError(f"column {column!r}: NaN is not bucketizable", line=rowno)
        label = labels[bisect_right(thresholds, number)]
        new_rows.append(row[:idx] + (label,) + row[idx + 1 :])
    return StructuredLog(
        columns=log.columns, rows=tuple(new_rows), label_column=log.label_column
    )


def exclude_columns(
    log: StructuredLog,
    user_excluded: Iterable[str],
    distinct_ratio_threshold: float,
) -> ColumnExclusionReport:
    """Partition feature columns by the distinct-value ratio check.

    A column is auto-excluded when its distinct-value count (nulls counted
    as one value) exceeds distinct_ratio_threshold x row_count. User
    exclusions take precedence and skip the check.
    """
    if not 0 < distinct_ratio_threshold <= 1:
        raise ConfigError(
            "must be in (0, 1]", flag="--distinct-ratio-threshold"
        )
    features = log.feature_columns()
    user = frozenset(user_excluded)
    unknown = user - set(features)
    if unknown:
        raise ConfigError(
            f"not a feature column: {', '.join(sorted(unknown))}",
            flag="--exclude-columns",
        )
    auto = []
    included = []
    n = log.row_count
    for name in features:
        if name in user:
            continue
        idx = log.column_index(name)
        distinct = len({row[idx] for row in log.rows})
        ratio = distinct / n if n else 0.0
        if distinct > distinct_ratio_threshold * n:
            auto.append((name, distinct, ratio))
        else:
            included.append(name)
    return ColumnExclusionReport(
        user_excluded=user, auto_excluded=tuple(auto), included=tuple(included)
    )


def _intern_items(
    log: StructuredLog, included: Sequence[str], null_as_item: bool
) -> tuple[tuple[Item, ...], dict[tuple[str, Optional[str]], int]]:
    indices = [log.column_index(c) for c in included]
    pairs: set[tuple[str, str]] = set()
    for row in log.rows:
        for col, idx in zip(included, indices):
            value = row[idx]
            if value is NULL:
                if not null_as_item:
                    continue
                value = NULL_ITEM_VALUE
            pairs.add((col, value))
    # dense ids assigned in (column, value) lexicographic order for determinism
    items = tuple(
        Item(id=i, column=col, value=val) for i, (col, val) in enumerate(sorted(pairs))
    )
    mapping: dict[tuple[str, Optional[str]], int] = {
        (it.column, it.value): it.id for it in items
    }
    return items, mapping


def _build_dataset(
    log: StructuredLog,
    included: Sequence[str],
    target_value: str,
    aggregate: bool,
    null_as_item: bool,
) -> AggregatedDataset:
    if not included:
        raise ConfigError("no feature columns left to analyze after exclusion")
    for c in included:
        if c == log.label_column:
            raise ConfigError("label column cannot be a feature column")
    label_idx = log.column_index(log.label_column)
    if not any(row[label_idx] == target_value for row in log.rows):
        raise TargetAbsentError(
            f"no row has {log.label_column!r} = {target_value!r}"
        )
    items, mapping = _intern_items(log, included, null_as_item)
    indices = [log.column_index(c) for c in included]

    def row_items(row) -> tuple[int, ...]:
        ids = []
        for col, idx in zip(included, indices):
            value = row[idx]
            if value is NULL:
                if not null_as_item:
                    continue
                value = NULL_ITEM_VALUE
            ids.append(mapping[(col, value)])
        ids.sort()
        return tuple(ids)

    total_pos = 0
    total_neg = 0
    if aggregate:
        weights: dict[tuple[int, ...], list[int]] = {}
        for row in log.rows:
            key = row_items(row)
            bucket = weights.setdefault(key, [0, 0])
            if row[label_idx] == target_value:
                bucket[0] += 1
                total_pos += 1
            else:
                bucket[1] += 1
                total_neg += 1
        groups = tuple(
            (key, pw, nw) for key, (pw, nw) in sorted(weights.items())
        )
    else:
        unit_groups = []
        for row in log.rows:
            key = row_items(row)
            if row[label_idx] == target_value:
                unit_groups.append((key, 1, 0))
                total_pos += 1
            else:
                unit_groups.append((key, 0, 1))
                total_neg += 1
        groups = tuple(unit_groups)
    return AggregatedDataset(
        items=items,
        groups=groups,
        total_positive=total_pos,
        total_negative=total_neg,
        source_rows=log.row_count,
    )


def pre_aggregate(
    log: StructuredLog,
    included: Sequence[str],
    target_value: str,
    *,
    null_as_item: bool = False,
) -> AggregatedDataset:
    """Group identical rows over the included columns into weighted records.

    Each group records how many of its rows carry the target label
    (positive weight) and how many do not (negative weight). Null values
    contribute no item unless null_as_item is set.
    """
    return _build_dataset(log, included, target_value, True, null_as_item)


def row_dataset(
    log: StructuredLog,
    included: Sequence[str],
    target_value: str,
    *,
    null_as_item: bool = False,
) -> AggregatedDataset:
    """Unaggregated form: one unit-weight group per row, same interning."""
    return _build_dataset(log, included, target_value, False, null_as_item)


def expand_rows(ds: AggregatedDataset) -> AggregatedDataset:
    """Weight-1 expansion of an aggregated dataset (for equivalence checks)."""
    unit = []
    for key, pw, nw in ds.groups:
        unit.extend([(key, 1, 0)] * pw)
        unit.extend([(key, 0, 1)] * nw)
    return AggregatedDataset(
        items=ds.items,
        groups=tuple(unit),
        total_positive=ds.total_positive,
        total_negative=ds.total_negative,
        source_rows=ds.source_rows,
    )
