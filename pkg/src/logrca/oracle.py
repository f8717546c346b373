"""Brute-force reference implementations for validating the miners and filters.

Deliberately dumb and kept free of the production code paths: enumeration
walks every column combination and counts by linear scan, and the filter
oracle is a direct double loop over all subset/superset pairs. Only suitable
for small instances; guards refuse anything larger.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .dataset import AggregatedDataset
from .errors import OracleGuardError
from .rules import AssociationRule, FilterParams

MAX_ORACLE_ITEMS = 24
MAX_ORACLE_RULES = 10_000


@dataclass(frozen=True)
class OracleResult:
    """Item-set -> (target count, global count) for all qualifying sets."""

    itemsets: dict[tuple[int, ...], tuple[int, int]]

    def target_counts(self) -> set[tuple[tuple[int, ...], int]]:
        return {(items, tc) for items, (tc, _) in self.itemsets.items()}


def brute_force_mine(
    ds: AggregatedDataset, min_support: float, max_length: int
) -> OracleResult:
    """Enumerate every item combination (one item per column, up to
    max_length) and keep those meeting min_support among target rows."""
    if ds.item_count > MAX_ORACLE_ITEMS:
        raise OracleGuardError(
            f"{ds.item_count} items exceeds the enumeration guard of {MAX_ORACLE_ITEMS}"
        )
    by_column: dict[str, list[int]] = {}
    for item in ds.items:
        by_column.setdefault(item.column, []).append(item.id)
    columns = sorted(by_column)
    threshold = Fraction(min_support)
    total_positive = ds.total_positive

    found: dict[tuple[int, ...], tuple[int, int]] = {}
    for k in range(1, max_length + 1):
        if k > len(columns):
            break
        for column_combo in combinations(columns, k):
            for choice in product(*(by_column[c] for c in column_combo)):
                wanted = set(choice)
                target = 0
                everywhere = 0
                for group, pw, nw in ds.groups:
                    if wanted.issubset(group):
                        target += pw
                        everywhere += pw + nw
                if target > 0 and Fraction(target, total_positive) >= threshold:
                    found[tuple(sorted(choice))] = (target, everywhere)
    return OracleResult(itemsets=found)


def brute_force_filters(
    rules: Sequence[AssociationRule],
    all_frequent: Sequence[AssociationRule],
    params: FilterParams,
) -> list[AssociationRule]:
    """Apply both dominance definitions by direct pairwise comparison, with
    drop decisions computed against the input set."""
    if len(rules) > MAX_ORACLE_RULES:
        raise OracleGuardError(
            f"{len(rules)} rules exceeds the guard of {MAX_ORACLE_RULES}"
        )
    survivors = []
    for rule in rules:
        rule_set = set(rule.items)
        drop = False
        for other in all_frequent:
            other_set = set(other.items)
            if other_set < rule_set:
                if other.stats.lift * params.h_lift >= rule.stats.lift:
                    drop = True
                    break
            elif other_set > rule_set:
                if (
                    other.stats.supp_target * params.h_supp >= rule.stats.supp_target
                    and other.stats.lift > rule.stats.lift * params.h_lift
                ):
                    drop = True
                    break
        if not drop:
            survivors.append(rule)
    return survivors
