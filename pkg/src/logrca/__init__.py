"""Root-cause analysis for structured logs via weighted frequent item-set mining."""

__version__ = "0.1.0"

from .apriori import FrequentItemSet, MiningParams, generate_candidates, mine_apriori
from .config import BucketSpec, RunConfig
from .dataset import (
    AggregatedDataset,
    ColumnExclusionReport,
    Item,
    StructuredLog,
    bucketize_numeric,
    exclude_columns,
    expand_rows,
    load_structured_log,
    pre_aggregate,
    row_dataset,
)
from .fpgrowth import FPNode, FPTree, build_fp_tree, fp_growth, mine_fpgrowth
from .metrics import RuleStats, count_itemset, rule_stats
from .oracle import OracleResult, brute_force_filters, brute_force_mine
from .pipeline import benchmark, run_analysis, sweep
from .report import ReportDocument, build_report, report_from_json, report_to_json
from .rules import (
    AssociationRule,
    FilterParams,
    apply_dominance_filters,
    filter_subset_dominance,
    filter_superset_dominance,
    score_and_lift_filter,
)
from .synth import GeneratorSpec, generate_log

__all__ = [
    "AggregatedDataset",
    "AssociationRule",
    "BucketSpec",
    "ColumnExclusionReport",
    "FPNode",
    "FPTree",
    "FilterParams",
    "FrequentItemSet",
    "GeneratorSpec",
    "Item",
    "MiningParams",
    "OracleResult",
    "ReportDocument",
    "RuleStats",
    "RunConfig",
    "StructuredLog",
    "apply_dominance_filters",
    "benchmark",
    "brute_force_filters",
    "brute_force_mine",
    "bucketize_numeric",
    "build_fp_tree",
    "build_report",
    "count_itemset",
    "exclude_columns",
    "expand_rows",
    "filter_subset_dominance",
    "filter_superset_dominance",
    "fp_growth",
    "generate_candidates",
    "generate_log",
    "load_structured_log",
    "mine_apriori",
    "mine_fpgrowth",
    "pre_aggregate",
    "report_from_json",
    "report_to_json",
    "row_dataset",
    "rule_stats",
    "run_analysis",
    "score_and_lift_filter",
    "sweep",
]
