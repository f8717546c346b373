import pytest
from fastapi.testclient import TestClient

from logrca.service import app

from conftest import T1_CSV


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def t1_path(tmp_path):
    path = tmp_path / "t1.csv"
    path.write_bytes(T1_CSV)
    return str(path)


def t1_payload(t1_path, **overrides):
    payload = {
        "input": t1_path,
        "label_column": "status",
        "target_value": "pos",
        "distinct_ratio_threshold": 0.9,
        "min_support": 0.5,
        "min_lift": 1.2,
    }
    payload.update(overrides)
    return payload


class TestHealth:
    def test_ok(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"


class TestAnalyze:
    def test_report_contract(self, client, t1_path):
        response = client.post("/analyze", json=t1_payload(t1_path))
        assert response.status_code == 200
        body = response.json()
        assert body["version"] == 1
        assert body["dataset"]["rows"] == 6
        assert body["dataset"]["positives"] == 3
        assert body["dataset"]["negatives"] == 3
        assert "excluded_columns" in body["dataset"]
        top = body["rules"][0]
        assert top["items"] == [
            {"column": "dc", "value": "d1"},
            {"column": "kernel", "value": "k1"},
        ]
        assert top["lift"] == 2.0
        assert top["counts"] == {"x_and_y": 2, "x": 2, "y": 3, "total": 6}
        assert set(body["timings_ms"]) == {"ingest", "aggregate", "mine", "filter"}

    def test_no_timings_field_omitted(self, client, t1_path):
        response = client.post(
            "/analyze", json=t1_payload(t1_path, include_timings=False)
        )
        assert "timings_ms" not in response.json()

    def test_validation_error_names_field(self, client, t1_path):
        response = client.post("/analyze", json=t1_payload(t1_path, min_support=1.5))
        assert response.status_code == 422
        assert any(
            "min_support" in str(err["loc"]) for err in response.json()["detail"]
        )

    def test_missing_file_is_400(self, client):
        response = client.post("/analyze", json=t1_payload("/does/not/exist.csv"))
        assert response.status_code == 400

    def test_target_absent_is_400(self, client, t1_path):
        response = client.post(
            "/analyze", json=t1_payload(t1_path, target_value="nope")
        )
        assert response.status_code == 400
        assert "nope" in response.json()["detail"]

    def test_parse_error_is_400(self, client, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,status\n1,pos\n1,2,3\n")
        response = client.post("/analyze", json=t1_payload(str(bad)))
        assert response.status_code == 400
        assert "line 3" in response.json()["detail"]

    def test_bucketize_in_request(self, client, tmp_path):
        path = tmp_path / "lat.csv"
        path.write_text("latency,status\n30,ok\n40,ok\n350,fail\n420,fail\n60,ok\n")
        response = client.post(
            "/analyze",
            json={
                "input": str(path),
                "label_column": "status",
                "target_value": "fail",
                "distinct_ratio_threshold": 1.0,
                "min_support": 0.5,
                "bucketize": [
                    {"column": "latency", "thresholds": [100], "labels": ["fast", "slow"]}
                ],
            },
        )
        assert response.status_code == 200
        values = {
            i["value"] for r in response.json()["rules"] for i in r["items"]
        }
        assert "slow" in values

    def test_bad_bucketize_in_request(self, client, t1_path):
        response = client.post(
            "/analyze",
            json=t1_payload(
                t1_path,
                bucketize=[{"column": "dc", "thresholds": [5, 1], "labels": ["a", "b", "c"]}],
            ),
        )
        assert response.status_code == 422


class TestSweep:
    def test_min_support_curve(self, client, t1_path):
        response = client.post(
            "/sweep",
            json={
                "config": t1_payload(t1_path, max_length=2),
                "axis": "min_support",
                "values": [0.25, 0.5, 0.75, 1.0],
            },
        )
        assert response.status_code == 200
        assert response.json()["points"] == [
            {"value": 0.25, "count": 5},
            {"value": 0.5, "count": 3},
            {"value": 0.75, "count": 1},
            {"value": 1.0, "count": 1},
        ]

    def test_bad_axis_rejected(self, client, t1_path):
        response = client.post(
            "/sweep",
            json={"config": t1_payload(t1_path), "axis": "h_lift", "values": [1.0]},
        )
        assert response.status_code == 422


class TestBenchmark:
    def test_runs(self, client, t1_path):
        response = client.post(
            "/benchmark",
            json={
                "config": t1_payload(t1_path),
                "algorithms": ["apriori", "fpgrowth"],
                "thread_counts": [1],
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["groups"] == 4
        assert len(body["runs"]) == 2
        assert len({r["item_set_count"] for r in body["runs"]}) == 1

    def test_min_groups_guard(self, client, t1_path):
        response = client.post(
            "/benchmark",
            json={"config": t1_payload(t1_path), "min_groups": 1000},
        )
        assert response.status_code == 422


class TestGenerate:
    def test_csv_response(self, client):
        response = client.post(
            "/generate", json={"rows": 50, "seed": 1, "planted_lengths": [2]}
        )
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/csv")
        lines = response.text.strip().splitlines()
        assert len(lines) == 51
        assert lines[0].endswith("outcome")

    def test_generate_then_analyze(self, client, tmp_path):
        response = client.post(
            "/generate",
            json={"rows": 400, "seed": 5, "planted_lengths": [2], "positive_fraction": 0.3},
        )
        path = tmp_path / "synth.csv"
        path.write_text(response.text)
        analyze = client.post(
            "/analyze",
            json={
                "input": str(path),
                "label_column": "outcome",
                "target_value": "fail",
                "min_support": 0.3,
                "min_lift": 1.0,
            },
        )
        assert analyze.status_code == 200
        assert analyze.json()["dataset"]["rows"] == 400

    def test_invalid_spec(self, client):
        response = client.post("/generate", json={"rows": 100, "duplicates": 7})
        assert response.status_code == 422
