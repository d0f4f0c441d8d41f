import json
import shutil
import time

import pytest
from fastapi.testclient import TestClient

from hydroquery.config import AppConfig
from hydroquery.llm_client import ProviderSpec
from hydroquery.service import create_app

from support import DIM, FIX
from hydroquery.embedding import EmbedderSpec

POLL_DEADLINE_S = 30.0


def make_config(tmp_path, level="complex", index=True):
    data_dir = tmp_path / "data"
    data_dir.mkdir(exist_ok=True)
    spec = ProviderSpec(
        kind="scripted", transcript_path=str(FIX / "transcripts" / f"{level}.jsonl")
    )
    cfg = AppConfig(
        embedder=EmbedderSpec(dimension=DIM),
        generator=spec,
        evaluator=spec,
        data_dir=str(data_dir),
        index_path=str(FIX / "index.jsonl") if index else str(tmp_path / "absent.jsonl"),
        prompt_level=level,
    )
    return cfg


@pytest.fixture()
def client(tmp_path):
    return TestClient(create_app(make_config(tmp_path)))


def wait_for_run(client, run_id):
    deadline = time.monotonic() + POLL_DEADLINE_S
    while time.monotonic() < deadline:
        doc = client.get(f"/api/runs/{run_id}").json()
        if doc.get("final_status") != "in_progress":
            return doc
        time.sleep(0.05)
    raise AssertionError(f"run {run_id} did not finish")


def test_submit_and_poll_answered(client):
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "How many pumps are in the network?",
    })
    assert resp.status_code == 202
    run_id = resp.json()["run_id"]
    doc = wait_for_run(client, run_id)
    assert doc["final_status"] == "answered"
    assert doc["answer"] == 1
    assert doc["run_id"] == run_id
    assert doc["attempts"][0]["envelope"]["status"] == "ok"
    # transcript and raw prompts are not in the public run view
    assert "transcript" not in doc
    assert "prompts" not in doc


def test_prompts_endpoint(client):
    run_id = client.post("/api/query", json={
        "network_id": "Net1", "query": "How many pumps are in the network?",
    }).json()["run_id"]
    wait_for_run(client, run_id)
    prompts = client.get(f"/api/runs/{run_id}/prompts").json()
    assert prompts
    for doc in prompts.values():
        assert set(doc) == {"system", "user", "kind"}


def test_unknown_network(client):
    resp = client.post("/api/query", json={"network_id": "Atlantis", "query": "q"})
    assert resp.status_code == 404
    assert resp.json()["code"] == "NETWORK_UNKNOWN"


def test_unknown_run(client):
    resp = client.get("/api/runs/nope")
    assert resp.status_code == 404
    assert resp.json()["code"] == "RUN_UNKNOWN"


def test_missing_index_conflict(tmp_path):
    client = TestClient(create_app(make_config(tmp_path, index=False)))
    resp = client.post("/api/query", json={"network_id": "Net1", "query": "q"})
    assert resp.status_code == 409
    assert resp.json()["code"] == "INDEX_MISSING"


def test_bad_override_rejected(client):
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "q",
        "overrides": {"prompt_level": "psychic"},
    })
    assert resp.status_code == 400
    assert resp.json()["code"] == "BAD_OVERRIDE"
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "q", "overrides": {"max_retries": 99},
    })
    assert resp.status_code == 422


def test_unknown_override_key_rejected_or_ignored(client):
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "How many pumps are in the network?",
        "overrides": {"sandbox_timeout_s": 0.001},
    })
    assert resp.status_code == 202
    doc = wait_for_run(client, resp.json()["run_id"])
    # the unknown knob must not reach the sandbox
    assert doc["final_status"] == "answered"


def test_overrides_plumb_through(tmp_path):
    client = TestClient(create_app(make_config(tmp_path, level="basic")))
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "What is the diameter of pipe ID 110?",
        "overrides": {"max_retries": 0},
    })
    doc = wait_for_run(client, resp.json()["run_id"])
    assert doc["final_status"] == "failed"
    assert len(doc["attempts"]) == 1
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "What is the diameter of pipe ID 110?",
        "overrides": {"max_retries": 5},
    })
    doc = wait_for_run(client, resp.json()["run_id"])
    assert doc["final_status"] == "answered"
    assert doc["config"]["max_retries"] == 5


def test_networks_endpoint(client):
    nets = client.get("/api/networks").json()
    ids = [n["network_id"] for n in nets]
    assert ids == ["Net1", "Net3", "LTown"]
    by_id = {n["network_id"]: n for n in nets}
    assert by_id["LTown"]["quality_configured"] is True


def test_run_persists_across_restart(tmp_path):
    cfg = make_config(tmp_path)
    client = TestClient(create_app(cfg))
    run_id = client.post("/api/query", json={
        "network_id": "Net1", "query": "How many pumps are in the network?",
    }).json()["run_id"]
    first = wait_for_run(client, run_id)

    reborn = TestClient(create_app(cfg))
    again = reborn.get(f"/api/runs/{run_id}")
    assert again.status_code == 200
    assert again.json() == first


def test_rebuild_index(tmp_path):
    cfg = make_config(tmp_path)
    shutil.copy(FIX / "corpus.json", tmp_path / "data" / "corpus.json")
    client = TestClient(create_app(cfg))
    resp = client.post("/api/index/rebuild")
    assert resp.status_code == 200
    body = resp.json()
    assert body["dimension"] == DIM
    assert body["entry_count"] > 0
    assert "fnv1a64" in body["embedder_id"]


def test_rebuild_conflict_while_running(tmp_path):
    cfg = make_config(tmp_path)
    shutil.copy(FIX / "corpus.json", tmp_path / "data" / "corpus.json")
    app = create_app(cfg)
    client = TestClient(app)
    state = app.state.service
    with state.lock:
        state.rebuilding = True
    resp = client.post("/api/index/rebuild")
    assert resp.status_code == 409
    assert resp.json()["code"] == "REBUILD_IN_PROGRESS"
    with state.lock:
        state.rebuilding = False
    assert client.post("/api/index/rebuild").status_code == 200


def test_bench_report_endpoint(tmp_path):
    cfg = make_config(tmp_path)
    client = TestClient(create_app(cfg))
    resp = client.get("/api/bench/report")
    assert resp.status_code == 404
    assert resp.json()["code"] == "NO_REPORT"
    shutil.copy(FIX / "report.json", tmp_path / "data" / "bench_report.json")
    resp = client.get("/api/bench/report")
    assert resp.status_code == 200
    assert "cells" in resp.json()


def test_run_cap(tmp_path):
    app = create_app(make_config(tmp_path), run_cap=0)
    client = TestClient(app)
    resp = client.post("/api/query", json={
        "network_id": "Net1", "query": "How many pumps are in the network?",
    })
    assert resp.status_code == 429
    assert resp.json()["code"] == "RUN_CAP"
