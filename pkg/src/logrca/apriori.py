"""Level-wise frequent item-set mining with weighted counts.

Candidates of length k+1 are formed by the classic prefix join over the
frequent k-sets, pruned by downward closure and by same-column mutual
exclusion (an item-set never holds two values of one column). Candidate
counting at each level can be partitioned across a bounded thread pool;
results are merged by sorting, so the output is identical for any thread
count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .dataset import AggregatedDataset
from .errors import ConfigError, InternalError
from .metrics import support_threshold_count


@dataclass(frozen=True)
class FrequentItemSet:
    """A mined item-set with its weighted count among target rows."""

    items: tuple[int, ...]
    target_count: int
    supp_target: float

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class MiningParams:
    min_support: float
    max_length: int = 5
    threads: int = 1

    def __post_init__(self):
        if not 0 < self.min_support <= 1:
            raise ConfigError("must be in (0, 1]", flag="--min-support")
        if self.max_length < 1:
            raise ConfigError("must be >= 1", flag="--max-length")
        if self.threads < 1:
            raise ConfigError("must be >= 1", flag="--threads")


def generate_candidates(
    frequent: Sequence[tuple[int, ...]], item_columns: Sequence[int]
) -> list[tuple[int, ...]]:
    """Join frequent k-sets into candidate (k+1)-sets.

    Two sorted k-sets sharing their first k-1 items join into one candidate;
    candidates keeping two items of the same column or having an infrequent
    k-subset are pruned. Output is sorted and duplicate-free.
    """
    if not frequent:
        return []
    k = len(frequent[0])
    frequent_set = set()
    for itemset in frequent:
        if len(itemset) != k:
            raise InternalError("mixed item-set lengths in candidate join")
        frequent_set.add(itemset)
    ordered = sorted(frequent_set)
    candidates = []
    for i, left in enumerate(ordered):
        prefix = left[:-1]
        for right in ordered[i + 1 :]:
            if right[:-1] != prefix:
                break  # sorted order: no further right shares the prefix
            a, b = left[-1], right[-1]
            if item_columns[a] == item_columns[b]:
                continue
            candidate = left + (b,)
            if k >= 2 and any(
                sub not in frequent_set for sub in combinations(candidate, k)
            ):
                continue
            candidates.append(candidate)
    return candidates


def _count_chunk(
    candidates: Sequence[tuple[int, ...]],
    positive_groups: Sequence[tuple[frozenset[int], int]],
) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for candidate in candidates:
        wanted = frozenset(candidate)
        count = 0
        for group_set, weight in positive_groups:
            if wanted <= group_set:
                count += weight
        out.append((candidate, count))
    return out


def _count_candidates(
    candidates: list[tuple[int, ...]],
    positive_groups: list[tuple[frozenset[int], int]],
    threads: int,
) -> dict[tuple[int, ...], int]:
    if threads <= 1 or len(candidates) < 2:
        return dict(_count_chunk(candidates, positive_groups))
    workers = min(threads, len(candidates))
    chunks = [candidates[i::workers] for i in range(workers)]
    counts: dict[tuple[int, ...], int] = {}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_count_chunk, chunks, [positive_groups] * workers):
            counts.update(part)
    return counts


def mine_apriori(ds: AggregatedDataset, params: MiningParams) -> list[FrequentItemSet]:
    """All item-sets of length <= max_length whose target-conditioned support
    meets min_support, with exact weighted counts."""
    total_positive = ds.total_positive
    min_count = support_threshold_count(params.min_support, total_positive)
    positive_groups = ds.positive_groups()
    item_columns = ds.item_column_ids()

    singles: dict[int, int] = {}
    for group_set, weight in positive_groups:
        for item in group_set:
            singles[item] = singles.get(item, 0) + weight
    level = sorted(
        ((item,), count) for item, count in singles.items() if count >= min_count
    )

    result: list[FrequentItemSet] = []
    k = 1
    while level and k <= params.max_length:
        result.extend(
            FrequentItemSet(items, count, count / total_positive)
            for items, count in level
        )
        if k == params.max_length:
            break
        candidates = generate_candidates([items for items, _ in level], item_columns)
        counts = _count_candidates(candidates, positive_groups, params.threads)
        level = sorted(
            (items, count) for items, count in counts.items() if count >= min_count
        )
        k += 1
    return result
