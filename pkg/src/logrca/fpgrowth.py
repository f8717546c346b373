"""Frequent item-set mining via a prefix tree of frequency-ordered items.

The tree compresses the positive (target-labeled) groups: each group is
inserted as a path of its retained items, sorted by decreasing weighted
count (ties broken by increasing item id), and node counts accumulate the
group weights. A header table links all nodes of one item so conditional
sub-databases can be read off without rescanning the dataset. Mining
recurses over conditional trees built fresh per suffix; a tree that is a
single chain short-circuits into emitting every node combination with the
minimum member count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .apriori import FrequentItemSet, MiningParams
from .dataset import AggregatedDataset
from .metrics import support_threshold_count


class FPNode:
    """Tree node: item id (None at the root), weighted count, links."""

    __slots__ = ("item", "count", "parent", "children", "node_link")

    def __init__(self, item: Optional[int], count: int = 0, parent: "FPNode | None" = None):
        self.item = item
        self.count = count
        self.parent = parent
        self.children: dict[int, FPNode] = {}
        self.node_link: Optional[FPNode] = None


@dataclass
class HeaderEntry:
    item: int
    count: int
    head: Optional[FPNode] = None
    _tail: Optional[FPNode] = field(default=None, repr=False)

    def link(self, node: FPNode) -> None:
        if self.head is None:
            self.head = node
        else:
            self._tail.node_link = node
        self._tail = node

    def chain(self) -> Iterable[FPNode]:
        node = self.head
        while node is not None:
            yield node
            node = node.node_link


@dataclass
class FPTree:
    root: FPNode
    header: list[HeaderEntry]  # ordered by (decreasing count, increasing item id)

    def single_path(self) -> Optional[list[FPNode]]:
        """The chain of nodes if the tree is a single path, else None."""
        path = []
        node = self.root
        while node.children:
            if len(node.children) > 1:
                return None
            node = next(iter(node.children.values()))
            path.append(node)
        return path


def _build_tree(
    transactions: Iterable[tuple[Sequence[int], int]], min_count: int
) -> FPTree:
    """Two passes: weighted item counts, then ordered path insertion."""
    transactions = list(transactions)
    counts: dict[int, int] = {}
    for items, weight in transactions:
        for item in items:
            counts[item] = counts.get(item, 0) + weight
    retained = {item: c for item, c in counts.items() if c >= min_count}
    order = sorted(retained, key=lambda item: (-retained[item], item))
    rank = {item: i for i, item in enumerate(order)}
    header = {item: HeaderEntry(item, retained[item]) for item in order}

    root = FPNode(None)
    for items, weight in transactions:
        path = sorted((i for i in items if i in rank), key=rank.__getitem__)
        node = root
        for item in path:
            child = node.children.get(item)
            if child is None:
                child = FPNode(item, 0, node)
                node.children[item] = child
                header[item].link(child)
            child.count += weight
            node = child
    return FPTree(root=root, header=[header[item] for item in order])


def build_fp_tree(ds: AggregatedDataset, min_support: float) -> FPTree:
    """Tree over the positive groups, keeping items whose weighted target
    count meets min_support of the positive total."""
    min_count = support_threshold_count(min_support, ds.total_positive)
    return _build_tree(
        ((sorted(s), w) for s, w in ds.positive_groups()), min_count
    )


def _conditional_base(entry: HeaderEntry) -> list[tuple[list[int], int]]:
    base = []
    for node in entry.chain():
        prefix = []
        parent = node.parent
        while parent is not None and parent.item is not None:
            prefix.append(parent.item)
            parent = parent.parent
        if prefix:
            base.append((prefix, node.count))
    return base


def fp_growth(
    tree: FPTree,
    suffix: tuple[int, ...],
    min_count: int,
    max_length: int,
) -> list[tuple[tuple[int, ...], int]]:
    """Emit (sorted item tuple, weighted count) for every frequent item-set
    extending ``suffix`` with items of ``tree``, up to max_length."""
    if len(suffix) >= max_length:
        return []
    out: list[tuple[tuple[int, ...], int]] = []
    path = tree.single_path()
    if path is not None:
        budget = max_length - len(suffix)
        for r in range(1, min(len(path), budget) + 1):
            for combo in combinations(path, r):
                items = tuple(sorted(suffix + tuple(n.item for n in combo)))
                out.append((items, min(n.count for n in combo)))
        return out
    for entry in reversed(tree.header):  # least frequent first
        beta = tuple(sorted(suffix + (entry.item,)))
        out.append((beta, entry.count))
        if len(beta) < max_length:
            conditional = _build_tree(_conditional_base(entry), min_count)
            if conditional.header:
                out.extend(fp_growth(conditional, beta, min_count, max_length))
    return out


def mine_fpgrowth(ds: AggregatedDataset, params: MiningParams) -> list[FrequentItemSet]:
    """Same contract and output as mine_apriori, via tree growth."""
    total_positive = ds.total_positive
    min_count = support_threshold_count(params.min_support, total_positive)
    tree = build_fp_tree(ds, params.min_support)
    mined = fp_growth(tree, (), min_count, params.max_length)
    result = [
        FrequentItemSet(items, count, count / total_positive)
        for items, count in mined
    ]
    result.sort(key=lambda f: (len(f.items), f.items))
    return result
