"""Support, confidence, and lift for item-sets over a weighted dataset.

All counting stays in exact integers; the ratios are single floating-point
divisions at the very end, so equality-based assertions (lift == 1.0 under
exact independence, invariance under weight scaling) hold bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dataset import AggregatedDataset
from .errors import InternalError


@dataclass(frozen=True)
class RuleStats:
    """Counts and derived ratios for one item-set against the target label."""

    count_x_and_y: int
    count_x: int
    count_y: int
    total: int
    supp_target: float
    supp_global: float
    confidence: float
    lift: float


def count_itemset(itemset: Sequence[int], ds: AggregatedDataset) -> tuple[int, int]:
    """Weighted (target, global) occurrence counts of an item-set.

    A group matches when its item tuple is a superset of the item-set; the
    empty item-set matches every group.
    """
    for item_id in itemset:
        if not 0 <= item_id < ds.item_count:
            raise InternalError(f"unknown item id {item_id}")
    wanted = frozenset(itemset)
    count_x_and_y = 0
    count_x = 0
    for group_set, (_, pw, nw) in zip(ds.group_item_sets(), ds.groups):
        if wanted <= group_set:
            count_x_and_y += pw
            count_x += pw + nw
    return count_x_and_y, count_x


def rule_stats(itemset: Sequence[int], ds: AggregatedDataset) -> RuleStats:
    """Full RuleStats for an item-set; lift is 0 when the set never occurs."""
    count_x_and_y, count_x = count_itemset(itemset, ds)
    count_y = ds.total_positive
    total = ds.total_positive + ds.total_negative
    supp_target = count_x_and_y / count_y
    supp_global = count_x / total
    confidence = count_x_and_y / count_x if count_x else 0.0
    lift = (count_x_and_y * total) / (count_x * count_y) if count_x else 0.0
    return RuleStats(
        count_x_and_y=count_x_and_y,
        count_x=count_x,
        count_y=count_y,
        total=total,
        supp_target=supp_target,
        supp_global=supp_global,
        confidence=confidence,
        lift=lift,
    )


def support_threshold_count(min_support: float, total_positive: int) -> int:
    """Smallest integer count c with c / total_positive >= min_support.

    Exact: the float threshold is taken at its binary value and compared by
    cross-multiplication, so no count near the boundary is misclassified.
    """
    frac = Fraction(min_support)
    c = -(-frac.numerator * total_positive // frac.denominator)  # ceil
    return max(c, 1) if min_support > 0 else 1
