"""HTTP facade over the three-action workflow: topic -> source -> theme -> report."""

from __future__ import annotations

import json
import logging
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse, Response
from pydantic import BaseModel

from themescope.config import PipelineConfig
from themescope.corpus.models import DiscussionThread, InterviewTranscript
from themescope.corpus.store import read_thread_store, read_transcript_store
from themescope.errors import ThemescopeError
from themescope.llm.cache import DiskCache
from themescope.llm.port import ConcurrencyLimitedPort, LlmPort, port_from_env
from themescope.pipeline import run_forum_pipeline, run_interview_pipeline
from themescope.report.render import ReportStore, render_markdown, serialize
from themescope.service.state import RunState, RunStore
from themescope.service.workflow import recommend_sources, suggest_high_level_themes
from themescope.sources.models import SubredditRecord, read_catalog
from themescope.themes.models import (
    GROUP_OFF_TOPIC,
    GROUP_OTHERS,
    HighLevelGroup,
)

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass
class ServiceSettings:
    data_dir: Path
    state_dir: Path
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    catalog_path: Optional[Path] = None

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        self.state_dir = Path(self.state_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.state_dir.mkdir(parents=True, exist_ok=True)


class TopicBody(BaseModel):
    topic: str


class RunBody(BaseModel):
    topic: str
    source: str
    theme: str


class DatasetBody(BaseModel):
    name: str
    kind: str  # forum | interview
    records: list[dict]


def default_groups(theme: str, kind: str) -> list[HighLevelGroup]:
    """One researcher-framed group per run; forum runs add the reserved noise buckets."""
    groups = [HighLevelGroup(group_id="main", name=theme, description=f"Quotes about {theme}")]
    if kind == "forum":
        groups.append(
            HighLevelGroup(
                group_id="off_topic",
                name="Off-topic",
                description="Content unrelated to the selected theme",
                reserved=GROUP_OFF_TOPIC,
            )
        )
        groups.append(
            HighLevelGroup(
                group_id="others",
                name="Others",
                description="Relevant insights beyond the selected theme",
                reserved=GROUP_OTHERS,
            )
        )
    return groups


def create_app(settings: ServiceSettings, port: Optional[LlmPort] = None) -> FastAPI:
    app = FastAPI(title="themescope", version="0.1.0")
    runs = RunStore(settings.state_dir / "runs.sqlite3")
    reports = ReportStore(settings.state_dir / "reports")
    cache = DiskCache(settings.state_dir / "llm-cache")
    catalog: list[SubredditRecord] = (
        list(read_catalog(settings.catalog_path)) if settings.catalog_path else []
    )
    workers: dict[str, threading.Thread] = {}
    port_lock = threading.Lock()
    limited_port: Optional[LlmPort] = None

    def get_port() -> LlmPort:
        nonlocal limited_port
        with port_lock:
            if limited_port is None:
                inner = port if port is not None else port_from_env()
                limited_port = ConcurrencyLimitedPort(inner, settings.pipeline.concurrency)
            return limited_port

    def thread_store(name: str) -> Path:
        return settings.data_dir / f"{name}.threads.ndjson"

    def transcript_store(name: str) -> Path:
        return settings.data_dir / f"{name}.transcripts.ndjson"

    def source_kind(name: str) -> Optional[str]:
        if thread_store(name).exists():
            return "forum"
        if transcript_store(name).exists():
            return "interview"
        return None

    # ------------------------------------------------------------------
    # workflow actions
    # ------------------------------------------------------------------

    @app.post("/topics/recommend-sources")
    def recommend(body: TopicBody):
        if not catalog:
            raise HTTPException(status_code=409, detail="no source catalog configured")
        names = [r.name for r in catalog]
        recommended = recommend_sources(
            body.topic,
            names,
            get_port(),
            chunk_size=settings.pipeline.recommend_chunk_size,
            model_id=settings.pipeline.model_id("recommend"),
            max_retries=settings.pipeline.max_retries,
            cache=cache,
        )
        return {"topic": body.topic, "recommended": recommended}

    @app.get("/sources")
    def sources():
        out = []
        known = set()
        for rec in catalog:
            known.add(rec.name)
            out.append(
                {
                    "name": rec.name,
                    "members": rec.members,
                    "kind": source_kind(rec.name) or "forum",
                    "has_data": source_kind(rec.name) is not None,
                }
            )
        for path in sorted(settings.data_dir.glob("*.ndjson")):
            name = path.name.split(".")[0]
            if name not in known:
                known.add(name)
                out.append(
                    {"name": name, "members": 0, "kind": source_kind(name), "has_data": True}
                )
        return {"sources": out}

    @app.post("/sources/{name}/themes")
    def themes_for_source(name: str):
        return {
            "source": name,
            "themes": suggest_high_level_themes(
                name,
                get_port(),
                model_id=settings.pipeline.model_id("suggest"),
                max_retries=settings.pipeline.max_retries,
                cache=cache,
            ),
        }

    # ------------------------------------------------------------------
    # runs
    # ------------------------------------------------------------------

    def execute_run(run_id: str):
        state = runs.load(run_id)
        started = time.monotonic()

        def progress(stage: str, done: int, total: int):
            current = runs.load(run_id)
            if stage in ("extracting", "analyzing") and current.stage != stage:
                try:
                    current.advance(stage)
                except ThemescopeError:
                    pass  # already past this stage
            current.set_progress(done, total)
            runs.save(current)

        try:
            kind = source_kind(state.source)
            state.advance("theme_selected")
            runs.save(state)
            state.advance("extracting")
            runs.save(state)
            shared = dict(
                port=get_port(),
                config=settings.pipeline,
                run_id=run_id,
                source=state.source,
                cache=cache,
                report_store=reports,
                progress=progress,
            )
            if kind == "forum":
                threads = list(read_thread_store(thread_store(state.source)))
                groups = default_groups(state.theme, "forum")
                report, artifacts, extraction = run_forum_pipeline(
                    threads, state.topic, state.theme, groups, **shared
                )
                n_quotes = len(extraction.quotes)
            else:
                transcripts = list(read_transcript_store(transcript_store(state.source)))
                groups = default_groups(state.theme, "interview")
                report, artifacts, quotes = run_interview_pipeline(
                    transcripts, state.topic, groups, **shared
                )
                n_quotes = len(quotes)
            state = runs.load(run_id)
            elapsed_min = max((time.monotonic() - started) / 60.0, 1e-9)
            state.quotes_processed = n_quotes
            state.quotes_per_minute = round(n_quotes / elapsed_min, 2)
            if state.stage != "analyzing":
                state.advance("analyzing")
            state.advance("complete")
            runs.save(state)
        except Exception as exc:  # worker thread: everything lands in run state
            logger.exception("run %s failed", run_id)
            state = runs.load(run_id)
            state.fail(f"{type(exc).__name__}: {exc}")
            runs.save(state)

    @app.post("/runs", status_code=201)
    def start_run(body: RunBody):
        if source_kind(body.source) is None:
            raise HTTPException(status_code=404, detail=f"no dataset for source {body.source!r}")
        run_id = uuid.uuid4().hex[:12]
        state = RunState(run_id=run_id, topic=body.topic, source=body.source, theme=body.theme)
        runs.save(state)
        worker = threading.Thread(target=execute_run, args=(run_id,), daemon=True)
        workers[run_id] = worker
        worker.start()
        return {"run_id": run_id}

    @app.get("/runs/{run_id}")
    def get_state(run_id: str):
        state = runs.load(run_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")
        return state.to_record()

    def _completed_report(run_id: str):
        state = runs.load(run_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")
        if state.stage == "failed":
            raise HTTPException(status_code=500, detail=f"run failed: {state.error}")
        if state.stage != "complete":
            raise HTTPException(
                status_code=409, detail=f"report not ready; run is at stage {state.stage!r}"
            )
        report = reports.latest(run_id)
        if report is None:
            raise HTTPException(status_code=500, detail="run complete but report missing")
        return report

    @app.get("/runs/{run_id}/report")
    def get_report(run_id: str):
        return _completed_report(run_id).to_record()

    @app.get("/runs/{run_id}/report/download")
    def download_report(run_id: str, format: str = Query("markdown")):
        report = _completed_report(run_id)
        if format == "markdown":
            return PlainTextResponse(
                render_markdown(report),
                media_type="text/markdown; charset=utf-8",
                headers={"Content-Disposition": f'attachment; filename="{run_id}.md"'},
            )
        if format == "records":
            return Response(serialize(report) + "\n", media_type="application/json")
        raise HTTPException(status_code=422, detail="format must be markdown or records")

    # ------------------------------------------------------------------
    # datasets
    # ------------------------------------------------------------------

    @app.post("/datasets", status_code=201)
    def upload_dataset(body: DatasetBody):
        if not _NAME_RE.match(body.name):
            raise HTTPException(status_code=422, detail="dataset name must be [A-Za-z0-9_.-]+")
        if body.kind not in ("forum", "interview"):
            raise HTTPException(status_code=422, detail="kind must be forum or interview")
        if not body.records:
            raise HTTPException(status_code=422, detail="records must be non-empty")
        try:
            if body.kind == "forum":
                parsed = [DiscussionThread.from_record(r) for r in body.records]
                path = thread_store(body.name)
            else:
                parsed = [InterviewTranscript.from_record(r) for r in body.records]
                path = transcript_store(body.name)
        except (ThemescopeError, KeyError, TypeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=f"invalid record: {exc}") from exc
        with open(path, "w", encoding="utf-8") as fh:
            for item in parsed:
                fh.write(json.dumps(item.to_record(), ensure_ascii=False) + "\n")
        return {"name": body.name, "kind": body.kind, "records": len(parsed)}

    app.state.settings = settings
    app.state.run_store = runs
    app.state.report_store = reports
    app.state.cache = cache
    app.state.workers = workers
    return app
