"""Association rules against the target label, and the dominance filters.

Mined item-sets become rules once scored; rules below the lift threshold are
dropped, and two redundancy filters condense the survivors. Both filters
compare each rule against ALL mined item-sets (including those that failed
the lift cut): a rule falls to subset dominance when some proper subset has
comparable lift, and to superset dominance when some proper superset keeps
comparable target support at strictly higher lift. Drop decisions are
computed against the input set and then applied, so evaluation order never
matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .apriori import FrequentItemSet
from .dataset import AggregatedDataset
from .errors import ConfigError
from .metrics import RuleStats, rule_stats


@dataclass(frozen=True)
class AssociationRule:
    """An item-set plus its stats; the unit of the final report."""

    items: tuple[int, ...]
    stats: RuleStats

    @property
    def length(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class FilterParams:
    min_lift: float = 1.0
    h_lift: float = 1.0
    h_supp: float = 1.0

    def __post_init__(self):
        if self.min_lift < 0:
            raise ConfigError("must be >= 0", flag="--min-lift")
        if self.h_lift < 1:
            raise ConfigError("must be >= 1", flag="--h-lift")
        if self.h_supp < 1:
            raise ConfigError("must be >= 1", flag="--h-supp")


def _proper_subsets(items: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    for r in range(1, len(items)):
        yield from combinations(items, r)


def score_rules(
    frequent: Sequence[FrequentItemSet], ds: AggregatedDataset
) -> list[AssociationRule]:
    """Exact stats for every mined item-set."""
    return [AssociationRule(f.items, rule_stats(f.items, ds)) for f in frequent]


def score_and_lift_filter(
    frequent: Sequence[FrequentItemSet], ds: AggregatedDataset, min_lift: float
) -> tuple[list[AssociationRule], list[AssociationRule]]:
    """Score all mined item-sets, keep rules with lift >= min_lift.

    Returns (kept rules, all scored item-sets); the full scored list feeds
    the dominance filters, which must see below-threshold subsets too.
    """
    scored = score_rules(frequent, ds)
    kept = [r for r in scored if r.stats.lift >= min_lift]
    return kept, scored


def filter_subset_dominance(
    rules: Sequence[AssociationRule],
    all_scored: Sequence[AssociationRule],
    params: FilterParams,
) -> list[AssociationRule]:
    """Drop a rule when a proper subset reaches its lift within the h_lift slack."""
    lift_of = {r.items: r.stats.lift for r in all_scored}
    kept = []
    for rule in rules:
        dominated = any(
            lift_of[sub] * params.h_lift >= rule.stats.lift
            for sub in _proper_subsets(rule.items)
            if sub in lift_of
        )
        if not dominated:
            kept.append(rule)
    return kept


def filter_superset_dominance(
    rules: Sequence[AssociationRule],
    all_scored: Sequence[AssociationRule],
    params: FilterParams,
) -> list[AssociationRule]:
    """Drop a rule when a proper superset keeps its target support (within
    h_supp slack) at strictly higher lift (beyond h_lift slack)."""
    stats_of = {r.items: r.stats for r in rules}
    dropped: set[tuple[int, ...]] = set()
    for sup in all_scored:
        if len(sup.items) < 2:
            continue
        s = sup.stats
        for sub in _proper_subsets(sup.items):
            t = stats_of.get(sub)
            if (
                t is not None
                and sub not in dropped
                and s.supp_target * params.h_supp >= t.supp_target
                and s.lift > t.lift * params.h_lift
            ):
                dropped.add(sub)
    return [r for r in rules if r.items not in dropped]


def apply_dominance_filters(
    rules: Sequence[AssociationRule],
    all_scored: Sequence[AssociationRule],
    params: FilterParams,
) -> list[AssociationRule]:
    """Both dominance filters; decisions are independent per rule, so the
    composition equals any evaluation order."""
    kept = filter_subset_dominance(rules, all_scored, params)
    return filter_superset_dominance(kept, all_scored, params)


def order_rules(rules: Sequence[AssociationRule]) -> list[AssociationRule]:
    """Report order: lift desc, target support desc, shorter first, then items."""
    return sorted(
        rules,
        key=lambda r: (-r.stats.lift, -r.stats.supp_target, r.length, r.items),
    )
