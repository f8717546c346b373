"""Deterministic synthetic structured-log generator for benchmarks and tests.

Plants high-lift cause combinations into a labeled log. Positive rows are
split across the planted rules; a carrier row sets every column of its rule
to the rule's signature value, while all other rows (negatives and carriers
of other rules) draw the signature value with a fixed match rate (negatives)
or avoid it entirely (positives). That construction makes each planted
combination's lift strictly dominate the lifts of its proper subsets, and
its target support exceed any mined superset's, so a planted rule survives
the dominance filters while its fragments do not. Noise columns are drawn
independently of the label and hover at lift 1.

The duplicates mode instead emits ``rows / duplicates`` distinct feature
combinations, each repeated exactly ``duplicates`` times, to exercise the
pre-aggregation path with a known compression ratio.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .dataset import StructuredLog
from .errors import ConfigError

LABEL_COLUMN = "outcome"
TARGET = "fail"
NEGATIVE = "ok"


@dataclass(frozen=True)
class GeneratorSpec:
    rows: int = 50_000
    seed: int = 7
    positive_fraction: float = 0.1
    planted_lengths: tuple[int, ...] = (5, 2)
    rule_cardinality: int = 4
    noise_columns: int = 3
    noise_cardinality: int = 3
    negative_match_rate: float = 0.5
    noise_rate: float = 0.02
    id_column: bool = False
    duplicates: int = 1

    def __post_init__(self):
        if self.rows < 1:
            raise ConfigError("must be >= 1", flag="--rows")
        if not 0 < self.positive_fraction < 1:
            raise ConfigError("must be in (0, 1)", flag="--positive-fraction")
        if self.duplicates < 1:
            raise ConfigError("must be >= 1", flag="--duplicates")
        if self.duplicates > 1 and self.rows % self.duplicates:
            raise ConfigError("rows must be divisible by duplicates", flag="--duplicates")
        if self.rule_cardinality < 2:
            raise ConfigError("must be >= 2", flag="--rule-cardinality")
        if self.noise_cardinality < 2:
            raise ConfigError("must be >= 2", flag="--noise-cardinality")
        if not 0 <= self.noise_rate < 1:
            raise ConfigError("must be in [0, 1)", flag="--noise-rate")
        if not 0 < self.negative_match_rate < 1:
            raise ConfigError("must be in (0, 1)", flag="--negative-match-rate")
        if any(length < 1 for length in self.planted_lengths):
            raise ConfigError("planted lengths must be >= 1", flag="--planted-lengths")


@dataclass(frozen=True)
class PlantedRule:
    """The ground truth for one planted cause combination."""

    columns: tuple[str, ...]
    value: str

    def items(self) -> tuple[tuple[str, str], ...]:
        return tuple((c, self.value) for c in self.columns)


@dataclass(frozen=True)
class SyntheticLog:
    log: StructuredLog
    planted: tuple[PlantedRule, ...]


def _rule_columns(lengths: tuple[int, ...]) -> list[tuple[str, ...]]:
    return [
        tuple(f"cause{i}_f{j}" for j in range(length))
        for i, length in enumerate(lengths)
    ]


def generate_log(spec: GeneratorSpec) -> SyntheticLog:
    """Build the synthetic StructuredLog for a spec; same spec, same bytes."""
    if spec.duplicates > 1:
        return _generate_duplicated(spec)
    rng = random.Random(spec.seed)
    rule_cols = _rule_columns(spec.planted_lengths)
    planted = tuple(PlantedRule(cols, "sig") for cols in rule_cols)
    alternatives = [f"alt{v}" for v in range(spec.rule_cardinality - 1)]
    noise_cols = tuple(f"noise{j}" for j in range(spec.noise_columns))
    noise_values = [f"n{v}" for v in range(spec.noise_cardinality)]

    columns: tuple[str, ...] = tuple(
        c for cols in rule_cols for c in cols
    ) + noise_cols + (LABEL_COLUMN,)
    if spec.id_column:
        columns = ("event_id",) + columns

    rows = []
    n_rules = len(planted)
    for i in range(spec.rows):
        positive = rng.random() < spec.positive_fraction
        carrier = rng.randrange(n_rules) if (positive and n_rules) else None
        if carrier is not None and rng.random() < spec.noise_rate:
            carrier = None  # defecting carrier: positive without its cause
        values = []
        for r, cols in enumerate(rule_cols):
            for _ in cols:
                if carrier == r:
                    values.append(planted[r].value)
                elif positive:
                    values.append(rng.choice(alternatives))
                elif rng.random() < spec.negative_match_rate:
                    values.append(planted[r].value)
                else:
                    values.append(rng.choice(alternatives))
        for _ in noise_cols:
            values.append(rng.choice(noise_values))
        values.append(TARGET if positive else NEGATIVE)
        if spec.id_column:
            values.insert(0, f"e{i:08d}")
        rows.append(tuple(values))
    # a target row must exist for any usable spec
    if not any(r[-1] == TARGET for r in rows):
        rows[0] = rows[0][:-1] + (TARGET,)
    log = StructuredLog(columns=columns, rows=tuple(rows), label_column=LABEL_COLUMN)
    return SyntheticLog(log=log, planted=planted)


def _generate_duplicated(spec: GeneratorSpec) -> SyntheticLog:
    rng = random.Random(spec.seed)
    distinct = spec.rows // spec.duplicates
    n_cols = max(len(spec.planted_lengths) * 2, 5)
    card = spec.rule_cardinality
    if card**n_cols < distinct:
        raise ConfigError(
            f"{n_cols} columns of {card} values cannot produce {distinct} distinct rows",
            flag="--duplicates",
        )
    columns = tuple(f"f{j}" for j in range(n_cols)) + (LABEL_COLUMN,)
    rows = []
    for base in range(distinct):
        digits = []
        x = base
        for _ in range(n_cols):  # mixed-radix encoding keeps combinations distinct
            digits.append(f"v{x % card}")
            x //= card
        label = TARGET if rng.random() < spec.positive_fraction else NEGATIVE
        row = tuple(digits) + (label,)
        rows.extend([row] * spec.duplicates)
    if not any(r[-1] == TARGET for r in rows):
        rows[: spec.duplicates] = [rows[0][:-1] + (TARGET,)] * spec.duplicates
    log = StructuredLog(columns=columns, rows=tuple(rows), label_column=LABEL_COLUMN)
    return SyntheticLog(log=log, planted=())


def to_csv(log: StructuredLog) -> str:
    """Render a StructuredLog as CSV text (null values as empty fields)."""
    import csv as _csv
    import io as _io

    buf = _io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(log.columns)
    for row in log.rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()
