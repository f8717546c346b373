"""Run configuration shared by the CLI, the service, and the library API."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError


class BucketSpec(BaseModel):
    """One numeric-column bucketization directive."""

    model_config = ConfigDict(frozen=True)

    column: str
    thresholds: list[float]
    labels: list[str]

    @field_validator("thresholds")
    @classmethod
    def _ascending(cls, v):
        if not v:
            raise ValueError("at least one threshold required")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("thresholds must be strictly ascending")
        return v

    @model_validator(mode="after")
    def _label_count(self):
        if len(self.labels) != len(self.thresholds) + 1:
            raise ValueError(
                f"need {len(self.thresholds) + 1} labels for "
                f"{len(self.thresholds)} thresholds"
            )
        return self

    @classmethod
    def parse(cls, directive: str) -> "BucketSpec":
        """Parse the COL:t1,t2,...:l1,l2,... flag syntax."""
        parts = directive.split(":")
        if len(parts) != 3:
            raise ConfigError(
                f"expected COLUMN:thresholds:labels, got {directive!r}",
                flag="--bucketize",
            )
        column, raw_thresholds, raw_labels = parts
        try:
            thresholds = [float(t) for t in raw_thresholds.split(",")]
        except ValueError:
            raise ConfigError(
                f"non-numeric threshold in {raw_thresholds!r}", flag="--bucketize"
            ) from None
        try:
            return cls(column=column, thresholds=thresholds, labels=raw_labels.split(","))
        except ValidationError as exc:
            raise ConfigError(exc.errors()[0]["msg"], flag="--bucketize") from None


class RunConfig(BaseModel):
    """Everything one analysis run needs; also the /analyze request body."""

    model_config = ConfigDict(frozen=True)

    input: str
    format: Literal["csv", "jsonl"] = "csv"
    label_column: str
    target_value: str
    exclude_columns: list[str] = Field(default_factory=list)
    distinct_ratio_threshold: float = Field(default=0.02, gt=0, le=1)
    bucketize: list[BucketSpec] = Field(default_factory=list)
    min_support: float = Field(default=0.4, gt=0, le=1)
    max_length: int = Field(default=5, ge=1)
    min_lift: float = Field(default=1.0, ge=0)
    h_lift: float = Field(default=1.0, ge=1)
    h_supp: float = Field(default=1.0, ge=1)
    algorithm: Literal["apriori", "fpgrowth", "auto"] = "auto"
    threads: int = Field(default=1, ge=1)
    null_as_item: bool = False
    aggregate: bool = True
    include_timings: bool = True
    output: str | None = None
    output_format: Literal["json", "csv"] = "json"


# CLI flag spelling per config field, for usage-error messages.
FLAG_BY_FIELD = {
    "input": "--input",
    "format": "--format",
    "label_column": "--label-column",
    "target_value": "--target-value",
    "exclude_columns": "--exclude-columns",
    "distinct_ratio_threshold": "--distinct-ratio-threshold",
    "bucketize": "--bucketize",
    "min_support": "--min-support",
    "max_length": "--max-length",
    "min_lift": "--min-lift",
    "h_lift": "--h-lift",
    "h_supp": "--h-supp",
    "algorithm": "--algorithm",
    "threads": "--threads",
    "null_as_item": "--null-as-item",
    "aggregate": "--no-pre-aggregate",
    "include_timings": "--no-timings",
    "output": "--output",
    "output_format": "--output-format",
}


def config_error_from_validation(exc: ValidationError) -> ConfigError:
    """Translate the first pydantic error into a flag-named usage error."""
    err = exc.errors()[0]
    field = str(err["loc"][0]) if err["loc"] else ""
    flag = FLAG_BY_FIELD.get(field)
    return ConfigError(err["msg"], flag=flag or (field or None))
