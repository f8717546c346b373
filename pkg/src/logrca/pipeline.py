"""End-to-end analysis pipeline: ingest, aggregate, mine, filter, report.

Also hosts the parameter sweep (one aggregation shared across points) and
the benchmark harness (same dataset timed across algorithm/thread
combinations, with an output-equivalence gate).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Literal, Sequence

from . import apriori as apriori_mod
from . import fpgrowth as fpgrowth_mod
from .apriori import FrequentItemSet, MiningParams
from .config import RunConfig
from .dataset import (
    AggregatedDataset,
    ColumnExclusionReport,
    StructuredLog,
    bucketize_numeric,
    exclude_columns,
    load_structured_log,
    pre_aggregate,
    row_dataset,
)
from .errors import ConfigError, EquivalenceError
from .report import ReportDocument, build_report
from .rules import FilterParams, apply_dominance_filters, score_and_lift_filter

Algorithm = Literal["apriori", "fpgrowth", "auto"]


def resolve_algorithm(name: Algorithm) -> str:
    # `auto` always picks the tree miner: it wins except on tiny candidate
    # counts, and the deciding variable is unknown before mining anyway.
    return "fpgrowth" if name == "auto" else name


def mine(ds: AggregatedDataset, config: RunConfig) -> list[FrequentItemSet]:
    params = MiningParams(
        min_support=config.min_support,
        max_length=config.max_length,
        threads=config.threads,
    )
    if resolve_algorithm(config.algorithm) == "apriori":
        return apriori_mod.mine_apriori(ds, params)
    return fpgrowth_mod.mine_fpgrowth(ds, params)


@dataclass
class PreparedData:
    log: StructuredLog
    exclusion: ColumnExclusionReport
    ds: AggregatedDataset
    timings_ms: dict[str, float]


def _now() -> float:
    return time.perf_counter()


def _ms(start: float, end: float) -> float:
    return (end - start) * 1000.0


def load_input(config: RunConfig) -> StructuredLog:
    with open(config.input, "rb") as handle:
        return load_structured_log(handle, config.format, config.label_column)


def prepare(config: RunConfig, log: StructuredLog | None = None) -> PreparedData:
    """Ingest and aggregate per the config; ``log`` skips the file read."""
    t0 = _now()
    if log is None:
        log = load_input(config)
    for spec in config.bucketize:
        log = bucketize_numeric(log, spec.column, spec.thresholds, spec.labels)
    t1 = _now()
    exclusion = exclude_columns(
        log, config.exclude_columns, config.distinct_ratio_threshold
    )
    build = pre_aggregate if config.aggregate else row_dataset
    ds = build(
        log,
        exclusion.included,
        config.target_value,
        null_as_item=config.null_as_item,
    )
    t2 = _now()
    timings = {"ingest": _ms(t0, t1), "aggregate": _ms(t1, t2)}
    return PreparedData(log=log, exclusion=exclusion, ds=ds, timings_ms=timings)


def analyze_prepared(prepared: PreparedData, config: RunConfig) -> ReportDocument:
    t2 = _now()
    frequent = mine(prepared.ds, config)
    t3 = _now()
    rules, all_scored = score_and_lift_filter(frequent, prepared.ds, config.min_lift)
    params = FilterParams(
        min_lift=config.min_lift, h_lift=config.h_lift, h_supp=config.h_supp
    )
    surviving = apply_dominance_filters(rules, all_scored, params)
    t4 = _now()
    timings = dict(prepared.timings_ms)
    timings["mine"] = _ms(t2, t3)
    timings["filter"] = _ms(t3, t4)
    return build_report(
        surviving,
        prepared.ds,
        prepared.exclusion,
        config,
        timings_ms=timings if config.include_timings else None,
    )


def run_analysis(config: RunConfig, log: StructuredLog | None = None) -> ReportDocument:
    """The full pipeline for one configuration."""
    return analyze_prepared(prepare(config, log=log), config)


SweepAxis = Literal["min_support", "min_lift"]


def sweep(
    config: RunConfig,
    axis: SweepAxis,
    values: Sequence[float],
    log: StructuredLog | None = None,
) -> list[tuple[float, int]]:
    """Curve of mined item-set count (min_support axis) or reported rule
    count (min_lift axis) per parameter value, over one shared aggregation."""
    if not values:
        raise ConfigError("at least one sweep value required", flag="--values")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("sweep values must be strictly ascending", flag="--values")
    prepared = prepare(config, log=log)
    points: list[tuple[float, int]] = []
    if axis == "min_support":
        for value in values:
            point_config = config.model_copy(update={"min_support": value})
            points.append((value, len(mine(prepared.ds, point_config))))
    elif axis == "min_lift":
        frequent = mine(prepared.ds, config)
        for value in values:
            rules, all_scored = score_and_lift_filter(frequent, prepared.ds, value)
            params = FilterParams(
                min_lift=value, h_lift=config.h_lift, h_supp=config.h_supp
            )
            surviving = apply_dominance_filters(rules, all_scored, params)
            points.append((value, len(surviving)))
    else:
        raise ConfigError(f"unknown sweep axis {axis!r}", flag="--axis")
    return points


@dataclass(frozen=True)
class BenchmarkRow:
    algorithm: str
    threads: int
    mine_ms: float
    item_set_count: int


@dataclass(frozen=True)
class BenchmarkResult:
    groups: int
    positives: int
    negatives: int
    prepare_ms: dict[str, float]
    rows: tuple[BenchmarkRow, ...]


def benchmark(
    config: RunConfig,
    algorithms: Sequence[str],
    thread_counts: Sequence[int],
    min_groups: int = 2,
    log: StructuredLog | None = None,
) -> BenchmarkResult:
    """Time each algorithm x thread-count combination on one dataset.

    All combinations must mine the identical item-set/count collection;
    a mismatch aborts rather than reporting misleading timings.
    """
    if not algorithms:
        raise ConfigError("at least one algorithm required", flag="--algorithms")
    for name in algorithms:
        if name not in ("apriori", "fpgrowth"):
            raise ConfigError(f"unknown algorithm {name!r}", flag="--algorithms")
    if any(t < 1 for t in thread_counts) or not thread_counts:
        raise ConfigError("thread counts must be >= 1", flag="--thread-counts")
    prepared = prepare(config, log=log)
    if prepared.ds.group_count < min_groups:
        raise ConfigError(
            f"dataset has {prepared.ds.group_count} groups; "
            f"benchmark needs at least {min_groups}",
            flag="--min-groups",
        )
    rows: list[BenchmarkRow] = []
    reference: set[tuple[tuple[int, ...], int]] | None = None
    for algorithm in algorithms:
        for threads in thread_counts:
            run_config = config.model_copy(
                update={"algorithm": algorithm, "threads": threads}
            )
            start = _now()
            frequent = mine(prepared.ds, run_config)
            elapsed = _ms(start, _now())
            outcome = {(f.items, f.target_count) for f in frequent}
            if reference is None:
                reference = outcome
            elif outcome != reference:
                raise EquivalenceError(
                    f"{algorithm} with {threads} thread(s) mined a different "
                    f"item-set collection"
                )
            rows.append(
                BenchmarkRow(
                    algorithm=algorithm,
                    threads=threads,
                    mine_ms=elapsed,
                    item_set_count=len(frequent),
                )
            )
    return BenchmarkResult(
        groups=prepared.ds.group_count,
        positives=prepared.ds.total_positive,
        negatives=prepared.ds.total_negative,
        prepare_ms=prepared.timings_ms,
        rows=tuple(rows),
    )
