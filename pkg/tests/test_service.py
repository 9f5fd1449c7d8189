import json
import time

import pytest
from fastapi.testclient import TestClient

from themescope.config import PipelineConfig
from themescope.errors import ArgumentError
from themescope.fixtures.corpus_gen import CorpusSpec, generate_corpus, generate_transcripts
from themescope.fixtures.mock_llm import ScriptedPort, deterministic_port
from themescope.corpus.ingest import ingest_forum_dump_files
from themescope.service.app import ServiceSettings, create_app
from themescope.service.state import RunState, RunStore
from themescope.service.workflow import recommend_sources, suggest_high_level_themes
from themescope.sources.models import SubredditRecord, write_catalog


def themes_response(n=9):
    return json.dumps(
        [{"title": f"Suggestion {i}", "description": f"short pitch {i}"} for i in range(n)]
    )


# ---------------------------------------------------------------------------
# workflow operations
# ---------------------------------------------------------------------------


def test_recommend_returns_catalog_members(scripted_port):
    scripted_port.push("source_recommendation", "beta, delta")
    got = recommend_sources("topic", ["alpha", "beta", "gamma", "delta", "eps"], scripted_port)
    assert got == ["beta", "delta"]


def test_recommend_drops_hallucinated_names(scripted_port):
    scripted_port.push("source_recommendation", "beta, madeup")
    got = recommend_sources("topic", ["alpha", "beta"], scripted_port)
    assert got == ["beta"]


def test_recommend_blank_line_is_valid_empty(scripted_port):
    scripted_port.push("source_recommendation", "\n")
    assert recommend_sources("topic", ["alpha"], scripted_port) == []


def test_recommend_chunk_count_oracle(scripted_port):
    names = [f"sub{i:04d}" for i in range(1000)]
    for _ in range(5):
        scripted_port.push("source_recommendation", "sub0001")
    got = recommend_sources("topic", names, scripted_port, chunk_size=200)
    assert scripted_port.call_count("source_recommendation") == 5
    assert got == ["sub0001"]  # deduplicated across chunks


def test_suggest_exactly_nine(scripted_port):
    scripted_port.push("high_level_theme_suggestion", themes_response(9))
    got = suggest_high_level_themes("jobs", scripted_port)
    assert len(got) == 9
    assert got[0] == {"title": "Suggestion 0", "description": "short pitch 0"}


def test_suggest_wrong_count_retries_then_errors(scripted_port):
    from themescope.errors import StructuredOutputError

    scripted_port.push("high_level_theme_suggestion", *[themes_response(7)] * 3)
    with pytest.raises(StructuredOutputError, match="9"):
        suggest_high_level_themes("jobs", scripted_port, max_retries=2)


def test_suggest_cached_per_source(tmp_path, scripted_port):
    from themescope.llm.cache import DiskCache

    cache = DiskCache(tmp_path)
    scripted_port.push("high_level_theme_suggestion", themes_response(9))
    first = suggest_high_level_themes("jobs", scripted_port, cache=cache)
    second = suggest_high_level_themes("jobs", scripted_port, cache=cache)
    assert first == second
    assert scripted_port.call_count() == 1


# ---------------------------------------------------------------------------
# run state machine
# ---------------------------------------------------------------------------


def test_stage_transitions_forward_only():
    state = RunState(run_id="r", topic="t", source="s", theme="th")
    state.advance("theme_selected")
    state.advance("extracting")
    with pytest.raises(ArgumentError, match="backward"):
        state.advance("created")
    state.advance("complete")
    with pytest.raises(ArgumentError, match="terminal"):
        state.advance("extracting")


def test_failed_is_terminal_from_any_active_stage():
    state = RunState(run_id="r", topic="t", source="s", theme="th")
    state.advance("extracting")
    state.fail("boom")
    assert state.stage == "failed" and state.error == "boom"
    with pytest.raises(ArgumentError, match="terminal"):
        state.advance("analyzing")


def test_progress_monotone():
    state = RunState(run_id="r", topic="t", source="s", theme="th")
    state.set_progress(5, 10)
    state.set_progress(3, 10)  # stale update must not regress
    assert state.progress_done == 5
    state.set_progress(9, 10)
    assert state.progress_done == 9


def test_run_store_persists_across_reopen(tmp_path):
    path = tmp_path / "runs.sqlite3"
    store = RunStore(path)
    state = RunState(run_id="abc", topic="t", source="s", theme="th")
    state.advance("extracting")
    store.save(state)
    reopened = RunStore(path)
    loaded = reopened.load("abc")
    assert loaded.stage == "extracting"
    assert reopened.load("missing") is None
    assert reopened.run_ids() == ["abc"]


# ---------------------------------------------------------------------------
# HTTP application
# ---------------------------------------------------------------------------


@pytest.fixture
def app_client(tmp_path):
    data_dir = tmp_path / "data"
    state_dir = tmp_path / "state"
    catalog_path = tmp_path / "catalog.ndjson"
    write_catalog(
        [SubredditRecord(name=f"synthsub{i:03d}", members=1000 - i, primary_language="en")
         for i in range(5)],
        catalog_path,
    )
    settings = ServiceSettings(
        data_dir=data_dir,
        state_dir=state_dir,
        pipeline=PipelineConfig(batch_size=50, concurrency=2),
        catalog_path=catalog_path,
    )
    port = deterministic_port()
    app = create_app(settings, port=port)
    client = TestClient(app)
    return client, port, tmp_path


def _seed_forum_dataset(client, tmp_path, name="synthsub000", n_threads=12, seed=3):
    subs, coms, _ = generate_corpus(
        CorpusSpec(n_threads=n_threads, n_subreddits=1), seed, tmp_path / f"dump-{name}-{seed}"
    )
    records = [t.to_record() for t in ingest_forum_dump_files(subs, coms)]
    response = client.post(
        "/datasets", json={"name": name, "kind": "forum", "records": records}
    )
    assert response.status_code == 201, response.text
    return records


def _wait_complete(client, run_id, timeout=30.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        state = client.get(f"/runs/{run_id}").json()
        if state["stage"] in ("complete", "failed"):
            return state
        time.sleep(0.05)
    raise AssertionError("run did not finish in time")


def test_full_interactive_flow(app_client):
    client, port, tmp_path = app_client

    # Action 1: topic -> recommended sources (subset of the catalog)
    r = client.post("/topics/recommend-sources", json={"topic": "ai and work"})
    assert r.status_code == 200
    recommended = r.json()["recommended"]
    catalog_names = {s["name"] for s in client.get("/sources").json()["sources"]}
    assert set(recommended) <= catalog_names

    # upload data for one source
    _seed_forum_dataset(client, tmp_path, "synthsub000")
    sources = {s["name"]: s for s in client.get("/sources").json()["sources"]}
    assert sources["synthsub000"]["has_data"]

    # Action 2: source -> nine theme suggestions
    r = client.post("/sources/synthsub000/themes")
    assert r.status_code == 200
    suggestions = r.json()["themes"]
    assert len(suggestions) == 9

    # Action 3: start the run and poll to completion
    r = client.post(
        "/runs",
        json={"topic": "ai and work", "source": "synthsub000", "theme": suggestions[0]["title"]},
    )
    assert r.status_code == 201
    run_id = r.json()["run_id"]
    state = _wait_complete(client, run_id)
    assert state["stage"] == "complete", state.get("error")
    assert state["progress_done"] == state["progress_total"] > 0
    assert state["quotes_processed"] > 0
    assert state["quotes_per_minute"] > 0

    # report is served and self-consistent
    report = client.get(f"/runs/{run_id}/report").json()
    assert report["run_id"] == run_id
    group_ids = [g["group_id"] for g in report["groups"]]
    assert group_ids == ["main", "off_topic", "others"]
    for group in report["groups"]:
        for theme in group["themes"]:
            num, den = theme["ratio"].split("/")
            assert theme["count"] == int(num) or int(den) != group["total_quotes"]

    # markdown download includes the ranked rows
    r = client.get(f"/runs/{run_id}/report/download", params={"format": "markdown"})
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/markdown")
    assert "# Thematic report" in r.text
    r = client.get(f"/runs/{run_id}/report/download", params={"format": "records"})
    assert r.status_code == 200
    assert json.loads(r.text)["run_id"] == run_id


def test_report_before_complete_and_unknown_run(app_client):
    client, port, tmp_path = app_client
    assert client.get("/runs/nope").status_code == 404
    assert client.get("/runs/nope/report").status_code == 404
    _seed_forum_dataset(client, tmp_path, "synthsub001", n_threads=40)
    r = client.post(
        "/runs", json={"topic": "t", "source": "synthsub001", "theme": "Theme"}
    )
    run_id = r.json()["run_id"]
    # immediately after start the report cannot be ready
    early = client.get(f"/runs/{run_id}/report")
    assert early.status_code in (409, 200)  # tiny corpora may already be done
    if early.status_code == 409:
        assert "not ready" in early.json()["detail"]
    _wait_complete(client, run_id)
    assert client.get(f"/runs/{run_id}/report").status_code == 200


def test_unknown_source_is_not_found(app_client):
    client, _, _ = app_client
    r = client.post("/runs", json={"topic": "t", "source": "missing", "theme": "x"})
    assert r.status_code == 404


def test_concurrent_runs_are_isolated(app_client):
    client, port, tmp_path = app_client
    _seed_forum_dataset(client, tmp_path, "synthsub002", n_threads=10, seed=21)
    _seed_forum_dataset(client, tmp_path, "synthsub003", n_threads=14, seed=22)
    r1 = client.post("/runs", json={"topic": "t1", "source": "synthsub002", "theme": "A"})
    r2 = client.post("/runs", json={"topic": "t2", "source": "synthsub003", "theme": "B"})
    id1, id2 = r1.json()["run_id"], r2.json()["run_id"]
    s1 = _wait_complete(client, id1)
    s2 = _wait_complete(client, id2)
    assert s1["stage"] == s2["stage"] == "complete"
    rep1 = client.get(f"/runs/{id1}/report").json()
    rep2 = client.get(f"/runs/{id2}/report").json()
    assert rep1["run_id"] != rep2["run_id"]
    assert rep1["topic"] == "t1" and rep2["topic"] == "t2"
    # different corpora produced genuinely different documents
    assert rep1["cache_key"] != rep2["cache_key"]


def test_completed_run_report_is_idempotent_no_llm(app_client):
    client, port, tmp_path = app_client
    _seed_forum_dataset(client, tmp_path, "synthsub004", n_threads=8, seed=31)
    r = client.post("/runs", json={"topic": "t", "source": "synthsub004", "theme": "A"})
    run_id = r.json()["run_id"]
    _wait_complete(client, run_id)
    before = port.call_count()
    for _ in range(3):
        assert client.get(f"/runs/{run_id}/report").status_code == 200
    assert port.call_count() == before


def test_dataset_upload_validation(app_client):
    client, _, _ = app_client
    r = client.post("/datasets", json={"name": "../evil", "kind": "forum", "records": [{}]})
    assert r.status_code == 422
    r = client.post("/datasets", json={"name": "x", "kind": "nope", "records": [{}]})
    assert r.status_code == 422
    r = client.post("/datasets", json={"name": "x", "kind": "forum", "records": []})
    assert r.status_code == 422
    r = client.post(
        "/datasets", json={"name": "x", "kind": "forum", "records": [{"title": "no id"}]}
    )
    assert r.status_code == 422
    good = {
        "submission_id": "s1", "subreddit": "x", "title": "t", "body": "b",
        "comments": ["c"], "created_at": "2023-05-01T00:00:00+00:00",
    }
    r = client.post("/datasets", json={"name": "x", "kind": "forum", "records": [good]})
    assert r.status_code == 201


def test_interview_dataset_run(app_client):
    client, port, tmp_path = app_client
    transcripts = [t.to_record() for t in generate_transcripts(6, seed=9)]
    r = client.post(
        "/datasets", json={"name": "panel1", "kind": "interview", "records": transcripts}
    )
    assert r.status_code == 201
    r = client.post("/runs", json={"topic": "ai", "source": "panel1", "theme": "Work"})
    run_id = r.json()["run_id"]
    state = _wait_complete(client, run_id)
    assert state["stage"] == "complete", state.get("error")
    report = client.get(f"/runs/{run_id}/report").json()
    # interview runs define no reserved groups
    assert [g["group_id"] for g in report["groups"]] == ["main"]
