import io
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logrca.dataset import (
    bucketize_numeric,
    exclude_columns,
    expand_rows,
    load_structured_log,
    pre_aggregate,
    row_dataset,
)
from logrca.errors import (
    ConfigError,
    ParseError,
    SchemaError,
    TargetAbsentError,
)

from conftest import random_log


class TestLoadCsv:
    def test_t1_shape(self, t1_log):
        assert t1_log.columns == ("kernel", "dc", "status")
        assert t1_log.row_count == 6
        assert t1_log.rows[0] == ("k1", "d1", "pos")

    def test_header_only(self):
        log = load_structured_log(io.BytesIO(b"a,b,status\n"), "csv", "status")
        assert log.row_count == 0
        assert log.columns == ("a", "b", "status")

    def test_empty_field_is_null(self):
        log = load_structured_log(io.BytesIO(b"a,status\n,pos\n"), "csv", "status")
        assert log.rows[0][0] is None

    def test_quoted_fields(self):
        raw = b'a,status\n"x,y",pos\n"he said ""hi""",neg\n'
        log = load_structured_log(io.BytesIO(raw), "csv", "status")
        assert log.rows[0][0] == "x,y"
        assert log.rows[1][0] == 'he said "hi"'

    def test_missing_label_column(self):
        with pytest.raises(SchemaError):
            load_structured_log(io.BytesIO(b"a,b\n1,2\n"), "csv", "status")

    def test_ragged_row_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            load_structured_log(io.BytesIO(b"a,status\n1,pos\n1,2,3\n"), "csv", "status")

    def test_duplicate_columns(self):
        with pytest.raises(SchemaError):
            load_structured_log(io.BytesIO(b"a,a,status\n1,2,pos\n"), "csv", "status")

    def test_empty_file(self):
        with pytest.raises(SchemaError):
            load_structured_log(io.BytesIO(b""), "csv", "status")

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            load_structured_log(io.BytesIO(b""), "parquet", "status")


class TestLoadJsonl:
    def test_missing_key_becomes_null(self):
        raw = b'{"kernel": "k1", "dc": "d1", "status": "pos"}\n{"kernel": "k2", "status": "neg"}\n'
        log = load_structured_log(io.BytesIO(raw), "jsonl", "status")
        assert log.columns == ("kernel", "dc", "status")
        assert log.rows[1] == ("k2", None, "neg")

    def test_scalars_stringified(self):
        raw = b'{"n": 3, "f": 2.5, "b": true, "x": null, "status": "pos"}\n'
        log = load_structured_log(io.BytesIO(raw), "jsonl", "status")
        assert log.rows[0] == ("3", "2.5", "true", None, "pos")

    def test_malformed_line(self):
        with pytest.raises(ParseError, match="line 2"):
            load_structured_log(
                io.BytesIO(b'{"status": "pos"}\n{oops\n'), "jsonl", "status"
            )

    def test_nested_value_rejected(self):
        with pytest.raises(ParseError, match="line 1"):
            load_structured_log(
                io.BytesIO(b'{"a": [1, 2], "status": "pos"}\n'), "jsonl", "status"
            )

    def test_label_never_present(self):
        with pytest.raises(SchemaError):
            load_structured_log(io.BytesIO(b'{"a": "1"}\n'), "jsonl", "status")


class TestBucketize:
    def make(self, *values):
        rows = tuple((v, "pos") for v in values)
        return load_structured_log(
            io.BytesIO(
                ("latency,status\n" + "\n".join(f"{v if v is not None else ''},pos" for v in values)).encode()
            ),
            "csv",
            "status",
        )

    def test_half_open_boundaries(self):
        log = self.make("99", "100")
        out = bucketize_numeric(log, "latency", [100], ["ok", "slow"])
        assert [r[0] for r in out.rows] == ["ok", "slow"]

    def test_middle_boundary(self):
        log = self.make("10")
        out = bucketize_numeric(log, "latency", [10, 100], ["a", "b", "c"])
        assert out.rows[0][0] == "b"

    def test_null_passthrough(self):
        log = self.make(None, "5")
        out = bucketize_numeric(log, "latency", [10], ["low", "high"])
        assert out.rows[0][0] is None
        assert out.rows[1][0] == "low"

    def test_above_last_threshold(self):
        log = self.make("5000")
        out = bucketize_numeric(log, "latency", [10, 100], ["a", "b", "c"])
        assert out.rows[0][0] == "c"

    def test_non_numeric_names_row(self):
        log = self.make("12", "fast")
        with pytest.raises(ParseError, match="line 2"):
            bucketize_numeric(log, "latency", [10], ["a", "b"])

    def test_bad_thresholds(self):
        log = self.make("1")
        with pytest.raises(ConfigError):
            bucketize_numeric(log, "latency", [10, 10], ["a", "b", "c"])
        with pytest.raises(ConfigError):
            bucketize_numeric(log, "latency", [10], ["a", "b", "c"])

    def test_original_log_untouched(self):
        log = self.make("99")
        bucketize_numeric(log, "latency", [10], ["a", "b"])
        assert log.rows[0][0] == "99"


class TestExcludeColumns:
    def make_log(self, n_rows, distinct):
        rows = tuple(
            (f"h{i % distinct}", "k1", "pos" if i % 2 else "neg")
            for i in range(n_rows)
        )
        return load_structured_log(
            io.BytesIO(
                ("hostname,kernel,status\n"
                 + "\n".join(",".join(r) for r in rows)).encode()
            ),
            "csv",
            "status",
        )

    def test_high_ratio_auto_excluded(self):
        log = self.make_log(10_000, 1_000)
        report = exclude_columns(log, set(), 0.02)
        assert [c for c, _, _ in report.auto_excluded] == ["hostname"]
        (_, count, ratio) = report.auto_excluded[0]
        assert count == 1_000
        assert ratio == pytest.approx(0.10)
        assert report.included == ("kernel",)

    def test_low_ratio_included(self):
        log = self.make_log(10_000, 2)
        report = exclude_columns(log, set(), 0.02)
        assert report.included == ("hostname", "kernel")

    def test_user_exclusion_precedence(self):
        log = self.make_log(100, 2)
        report = exclude_columns(log, {"hostname"}, 0.02)
        assert report.user_excluded == frozenset({"hostname"})
        assert all(c != "hostname" for c, _, _ in report.auto_excluded)

    def test_partition_property(self, t1_log):
        report = exclude_columns(t1_log, {"dc"}, 0.5)
        named = set(report.user_excluded) | {c for c, _, _ in report.auto_excluded} | set(report.included)
        assert named == set(t1_log.feature_columns())

    def test_empty_log_includes_all(self):
        log = load_structured_log(io.BytesIO(b"a,b,status\n"), "csv", "status")
        report = exclude_columns(log, set(), 0.02)
        assert report.included == ("a", "b")

    def test_unknown_user_column(self, t1_log):
        with pytest.raises(ConfigError):
            exclude_columns(t1_log, {"nope"}, 0.02)

    def test_bad_threshold(self, t1_log):
        with pytest.raises(ConfigError):
            exclude_columns(t1_log, set(), 0.0)


class TestPreAggregate:
    def test_t1_groups(self, t1_ds):
        ds = t1_ds
        assert [(i.column, i.value) for i in ds.items] == [
            ("dc", "d1"), ("dc", "d2"), ("kernel", "k1"), ("kernel", "k2"),
        ]
        assert ds.groups == (
            ((0, 2), 2, 0),
            ((0, 3), 0, 1),
            ((1, 2), 1, 1),
            ((1, 3), 0, 1),
        )
        assert (ds.total_positive, ds.total_negative) == (3, 3)

    def test_identical_rows_collapse(self):
        raw = b"a,status\n" + b"x,pos\n" * 4 + b"x,neg\n" * 3
        log = load_structured_log(io.BytesIO(raw), "csv", "status")
        ds = pre_aggregate(log, ("a",), "pos")
        assert ds.groups == (((0,), 4, 3),)

    def test_all_unique_no_compression(self):
        raw = b"a,status\n" + b"\n".join(f"x{i},pos".encode() for i in range(5))
        log = load_structured_log(io.BytesIO(raw), "csv", "status")
        ds = pre_aggregate(log, ("a",), "pos")
        assert ds.group_count == log.row_count

    def test_null_produces_no_item(self):
        raw = b"a,b,status\n,y,pos\nx,y,neg\n"
        log = load_structured_log(io.BytesIO(raw), "csv", "status")
        ds = pre_aggregate(log, ("a", "b"), "pos")
        by = next(g for g, pw, _ in ds.groups if pw == 1)
        assert len(by) == 1  # only b=y, no item for the null a

    def test_null_as_item_flag(self):
        raw = b"a,b,status\n,y,pos\nx,y,neg\n"
        log = load_structured_log(io.BytesIO(raw), "csv", "status")
        ds = pre_aggregate(log, ("a", "b"), "pos", null_as_item=True)
        rendered = {(i.column, i.value) for i in ds.items}
        assert ("a", "") in rendered

    def test_target_absent(self, t1_log):
        with pytest.raises(TargetAbsentError):
            pre_aggregate(t1_log, ("kernel",), "nosuch")

    def test_empty_included(self, t1_log):
        with pytest.raises(ConfigError):
            pre_aggregate(t1_log, (), "pos")

    def test_interning_round_trip(self, t1_ds):
        for item in t1_ds.items:
            assert t1_ds.items[item.id] is item

    def test_determinism(self, t1_log):
        a = pre_aggregate(t1_log, t1_log.feature_columns(), "pos")
        b = pre_aggregate(t1_log, t1_log.feature_columns(), "pos")
        assert a == b


def _restricted_multiset(log, included):
    idx = [log.column_index(c) for c in included]
    lab = log.column_index(log.label_column)
    return Counter(
        (tuple(row[i] for i in idx), row[lab] == "pos") for row in log.rows
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_aggregation_is_lossless(seed):
    log = random_log(random.Random(seed))
    included = log.feature_columns()
    ds = pre_aggregate(log, included, "pos")

    # expand every group back into rows; multiset over items+label must match
    def items_to_values(item_tuple):
        values = {c: None for c in included}
        for i in item_tuple:
            item = ds.items[i]
            values[item.column] = item.value
        return tuple(values[c] for c in included)

    expanded = Counter()
    for group, pw, nw in ds.groups:
        expanded[(items_to_values(group), True)] += pw
        expanded[(items_to_values(group), False)] += nw
    assert expanded == _restricted_multiset(log, included)
    assert ds.group_count <= log.row_count
    assert ds.total_positive + ds.total_negative == log.row_count
    for group, pw, nw in ds.groups:
        assert pw + nw >= 1
        assert list(group) == sorted(group)
        columns = [ds.items[i].column for i in group]
        assert len(set(columns)) == len(columns)  # one item per column


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_row_dataset_matches_expansion(seed):
    log = random_log(random.Random(seed))
    included = log.feature_columns()
    agg = pre_aggregate(log, included, "pos")
    rows = row_dataset(log, included, "pos")
    assert rows.group_count == log.row_count
    assert Counter(rows.groups) == Counter(expand_rows(agg).groups)
    assert (rows.total_positive, rows.total_negative) == (
        agg.total_positive,
        agg.total_negative,
    )
