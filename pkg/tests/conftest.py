import io
import random

import pytest

from logrca.dataset import (
    AggregatedDataset,
    Item,
    StructuredLog,
    exclude_columns,
    load_structured_log,
    pre_aggregate,
)
from logrca.metrics import RuleStats
from logrca.rules import AssociationRule

# Six-row fixture used throughout: two positive-group kernels, two dcs.
T1_CSV = b"""kernel,dc,status
k1,d1,pos
k1,d1,pos
k1,d2,pos
k2,d1,neg
k2,d2,neg
k1,d2,neg
"""


@pytest.fixture
def t1_log() -> StructuredLog:
    return load_structured_log(io.BytesIO(T1_CSV), "csv", "status")


@pytest.fixture
def t1_ds(t1_log) -> AggregatedDataset:
    report = exclude_columns(t1_log, set(), 1.0)
    return pre_aggregate(t1_log, report.included, "pos")


def item_id(ds: AggregatedDataset, column: str, value: str) -> int:
    for item in ds.items:
        if item.column == column and item.value == value:
            return item.id
    raise KeyError((column, value))


def itemset(ds: AggregatedDataset, *pairs: tuple[str, str]) -> tuple[int, ...]:
    return tuple(sorted(item_id(ds, c, v) for c, v in pairs))


def mined_pairs(frequent) -> set[tuple[tuple[int, ...], int]]:
    return {(f.items, f.target_count) for f in frequent}


def make_rule(items, supp_target: float, lift: float) -> AssociationRule:
    """Synthetic rule with just the fields the filters read."""
    stats = RuleStats(
        count_x_and_y=0,
        count_x=0,
        count_y=1,
        total=1,
        supp_target=supp_target,
        supp_global=0.0,
        confidence=0.0,
        lift=lift,
    )
    return AssociationRule(items=tuple(items), stats=stats)


def random_log(rng: random.Random) -> StructuredLog:
    """Small random labeled log: <= 6 columns, <= 4 values each, <= 250 rows,
    ~5% nulls, positive fraction 1-50% with at least one positive row."""
    n_cols = rng.randint(2, 6)
    cards = [rng.randint(2, 4) for _ in range(n_cols)]
    n_rows = rng.randint(10, 250)
    pos_frac = rng.uniform(0.01, 0.5)
    columns = tuple(f"c{i}" for i in range(n_cols)) + ("label",)
    rows = []
    for _ in range(n_rows):
        values = []
        for card in cards:
            if rng.random() < 0.05:
                values.append(None)
            else:
                values.append(f"v{rng.randrange(card)}")
        values.append("pos" if rng.random() < pos_frac else "neg")
        rows.append(tuple(values))
    if not any(r[-1] == "pos" for r in rows):
        rows[0] = rows[0][:-1] + ("pos",)
    return StructuredLog(columns=columns, rows=tuple(rows), label_column="label")


def random_dataset(rng: random.Random) -> AggregatedDataset:
    log = random_log(rng)
    return pre_aggregate(log, log.feature_columns(), "pos")
