from __future__ import annotations

import json
import time

import pytest
from fastapi.testclient import TestClient

from bibliotext.service import create_app
from bibliotext.service.config import ServiceConfig
from bibliotext.service.store import StateTransitionError, Store
from bibliotext.service.worker import WorkerPool

from conftest import fixture_bytes


def make_client(tmp_path, **overrides):
    config = ServiceConfig(data_dir=tmp_path / "data", workers=overrides.pop("workers", 2), **overrides)
    return TestClient(create_app(config))


def upload(client, content: bytes, name="data.csv"):
    return client.post("/datasets", files={"file": (name, content, "text/csv")})


def poll(client, job_id, timeout=60.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        state = client.get(f"/jobs/{job_id}").json()["state"]
        if state in ("done", "failed"):
            return state
        time.sleep(0.05)
    raise TimeoutError(f"job {job_id} still not finished")


# --- uploads -----------------------------------------------------------------

def test_upload_scopus_fixture_reports_capabilities(tmp_path):
    with make_client(tmp_path) as client:
        resp = upload(client, fixture_bytes("scopus"), "scopus.csv")
        assert resp.status_code == 201
        body = resp.json()
        assert body["source"] == "scopus"
        assert body["row_count"] == 12
        for analysis in ("keywords_stem", "topic_modeling", "bidirectional_network", "sunburst"):
            assert body["capabilities"][analysis]["eligible"], analysis


def test_upload_empty_file_422(tmp_path):
    with make_client(tmp_path) as client:
        resp = upload(client, b"")
        assert resp.status_code == 422
        assert resp.json()["detail"]["error"] == "EmptyFile"


def test_upload_undecodable_415(tmp_path):
    with make_client(tmp_path) as client:
        resp = upload(client, b"\xff\xfe\x00bad \xa9\x81\x81")
        assert resp.status_code == 415


def test_upload_over_limit_413(tmp_path):
    with make_client(tmp_path, upload_limit_bytes=100) as client:
        resp = upload(client, b"Title\n" + b"x" * 200)
        assert resp.status_code == 413


def test_upload_malformed_rows_422_with_diagnostics(tmp_path):
    with make_client(tmp_path) as client:
        resp = upload(client, b"a,b\n1,2\n1,2,3\n")
        assert resp.status_code == 422
        detail = resp.json()["detail"]
        assert detail["error"] == "MalformedRow"
        assert detail["rows"][0]["row"] == 1


def test_dataset_metadata_and_delete(tmp_path):
    with make_client(tmp_path) as client:
        dataset_id = upload(client, fixture_bytes("custom_full")).json()["dataset_id"]
        meta = client.get(f"/datasets/{dataset_id}").json()
        assert meta["row_count"] == 5
        caps = client.get(f"/datasets/{dataset_id}/capabilities").json()
        assert caps["sunburst"]["eligible"]
        assert client.delete(f"/datasets/{dataset_id}").status_code == 204
        assert client.get(f"/datasets/{dataset_id}").status_code == 404
        assert client.delete(f"/datasets/{dataset_id}").status_code == 404


def test_content_addressed_upload_is_idempotent(tmp_path):
    with make_client(tmp_path) as client:
        a = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        b = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        assert a == b


# --- jobs ----------------------------------------------------------------------

def test_lda_job_end_to_end(tmp_path):
    with make_client(tmp_path) as client:
        dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        resp = client.post("/jobs", json={
            "dataset_id": dataset_id,
            "analysis": "topic_lda",
            "params": {"k": 2, "iterations": 50, "seed": 11},
        })
        assert resp.status_code == 202
        job_id = resp.json()["job_id"]
        assert poll(client, job_id) == "done"
        result = client.get(f"/jobs/{job_id}/result").json()
        assert result["analysis"] == "topic_lda"
        assert len(result["phi"]) == 2
        assert abs(sum(result["phi"][0]) - 1) < 1e-9
        csv_resp = client.get(f"/jobs/{job_id}/result.csv")
        assert csv_resp.status_code == 200
        assert csv_resp.text.startswith("term_id,")


def test_submit_unknown_dataset_404(tmp_path):
    with make_client(tmp_path) as client:
        resp = client.post("/jobs", json={"dataset_id": "nope", "analysis": "sunburst", "params": {}})
        assert resp.status_code == 404


def test_submit_ineligible_409_names_missing_fields(tmp_path):
    with make_client(tmp_path) as client:
        dataset_id = upload(client, fixture_bytes("custom_keywords")).json()["dataset_id"]
        resp = client.post("/jobs", json={"dataset_id": dataset_id, "analysis": "sunburst", "params": {}})
        assert resp.status_code == 409
        assert "Document Type" in resp.json()["detail"]["missing_fields"]


def test_submit_invalid_params_400(tmp_path):
    with make_client(tmp_path) as client:
        dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        resp = client.post("/jobs", json={
            "dataset_id": dataset_id, "analysis": "topic_lda", "params": {"k": 1},
        })
        assert resp.status_code == 400


def test_unknown_job_404_and_pending_409(tmp_path):
    config = ServiceConfig(data_dir=tmp_path / "data")
    app = create_app(config)
    client = TestClient(app)  # no lifespan: worker pool never starts
    assert client.get("/jobs/nope").status_code == 404
    dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
    job_id = client.post("/jobs", json={
        "dataset_id": dataset_id, "analysis": "sunburst", "params": {},
    }).json()["job_id"]
    resp = client.get(f"/jobs/{job_id}/result")
    assert resp.status_code == 409
    assert resp.json()["detail"]["state"] == "queued"
    app.state.store.close()


def test_failed_job_reports_error(tmp_path):
    with make_client(tmp_path) as client:
        dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        job_id = client.post("/jobs", json={
            "dataset_id": dataset_id,
            "analysis": "topic_ctfidf",
            "params": {"k": 2, "embeddings_csv": "row_index,v0\n0,1.0\n"},
        }).json()["job_id"]
        assert poll(client, job_id) == "failed"
        job = client.get(f"/jobs/{job_id}").json()
        assert "InvalidParams" in job["error"]


def test_sunburst_job_result_invariants(tmp_path):
    with make_client(tmp_path) as client:
        dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        job_id = client.post("/jobs", json={
            "dataset_id": dataset_id, "analysis": "sunburst", "params": {},
        }).json()["job_id"]
        assert poll(client, job_id) == "done"
        root = client.get(f"/jobs/{job_id}/result").json()["root"]
        assert root["count"] == 12
        assert root["count"] == sum(c["count"] for c in root["children"])


# --- state machine and persistence ------------------------------------------------

def test_event_log_records_transitions(tmp_path):
    with make_client(tmp_path) as client:
        store: Store = client.app.state.store
        dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        job_id = client.post("/jobs", json={
            "dataset_id": dataset_id, "analysis": "keywords_stem", "params": {},
        }).json()["job_id"]
        assert poll(client, job_id) == "done"
        events = store.job_events(job_id)
        assert events == [(None, "queued"), ("queued", "running"), ("running", "done")]


def test_store_rejects_invalid_transitions(tmp_path):
    store = Store(tmp_path / "data")
    job_id = store.create_job("ds", "sunburst", {})
    with pytest.raises(StateTransitionError):
        store.mark_done(job_id, "nowhere")  # queued -> done skips running
    store.mark_running(job_id)
    store.mark_done(job_id, "somewhere")
    with pytest.raises(StateTransitionError):
        store.mark_failed(job_id, "no going back")
    store.close()


def test_restart_recovers_results_and_requeues_running(tmp_path):
    config = ServiceConfig(data_dir=tmp_path / "data", workers=2)
    with TestClient(create_app(config)) as client:
        dataset_id = upload(client, fixture_bytes("scopus")).json()["dataset_id"]
        done_job = client.post("/jobs", json={
            "dataset_id": dataset_id, "analysis": "keywords_stem", "params": {},
        }).json()["job_id"]
        assert poll(client, done_job) == "done"
        result_before = client.get(f"/jobs/{done_job}/result").content

    # simulate a crash mid-run: a job stuck in 'running'
    store = Store(tmp_path / "data")
    stuck = store.create_job(dataset_id, "keywords_stem", {})
    store.mark_running(stuck)
    store.close()

    with TestClient(create_app(config)) as client:
        assert client.get(f"/jobs/{done_job}/result").content == result_before
        assert poll(client, stuck) == "done"
        store2: Store = client.app.state.store
        events = store2.job_events(stuck)
        assert events[0] == (None, "queued")
        assert ("running", "queued") in events  # the recovery transition
        assert events[-1] == ("running", "done")


def test_twenty_concurrent_jobs_no_cross_contamination(tmp_path):
    plurals = [
        ("models", "model"), ("apples", "apple"), ("libraries", "library"),
        ("keywords", "keyword"), ("networks", "network"), ("topics", "topic"),
        ("systems", "system"), ("methods", "method"), ("studies", "study"),
        ("analyses", "analysis"), ("matrices", "matrix"), ("queries", "query"),
        ("branches", "branch"), ("indexes", "index"), ("tables", "table"),
        ("figures", "figure"), ("samples", "sample"), ("criteria", "criterion"),
        ("clusters", "cluster"), ("graphs", "graph"),
    ]
    with make_client(tmp_path, workers=4) as client:
        jobs = {}
        for plural, singular in plurals:
            csv_bytes = f"Keywords\n{plural}\n".encode()
            dataset_id = upload(client, csv_bytes, name=f"{plural}.csv").json()["dataset_id"]
            job_id = client.post("/jobs", json={
                "dataset_id": dataset_id, "analysis": "keywords_stem", "params": {},
            }).json()["job_id"]
            jobs[job_id] = (plural, singular)

        assert len(jobs) == 20
        for job_id, (plural, singular) in jobs.items():
            assert poll(client, job_id) == "done"
            result = client.get(f"/jobs/{job_id}/result").json()
            assert result["keyword_map"] == [[plural, singular]], job_id


def test_worker_pool_direct_recovery_path(tmp_path):
    store = Store(tmp_path / "data")
    raw = fixture_bytes("custom_keywords")
    dataset_id = store.add_dataset(raw, "kw.csv", "custom", 6, {})
    job_id = store.create_job(dataset_id, "keywords_stem", {})
    pool = WorkerPool(store, workers=1)
    pool.start()
    pool.join_idle()
    assert store.get_job(job_id)["state"] == "done"
    pool.stop()
    store.close()
