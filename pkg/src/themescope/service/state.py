"""Run lifecycle state machine with embedded persistence."""

from __future__ import annotations

import json
import sqlite3
import threading
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from themescope.errors import ArgumentError

STAGE_ORDER = (
    "created",
    "sources_recommended",
    "source_selected",
    "themes_suggested",
    "theme_selected",
    "extracting",
    "analyzing",
    "complete",
)
STAGE_FAILED = "failed"
TERMINAL_STAGES = ("complete", STAGE_FAILED)


@dataclass
class RunState:
    """Mutable run record. Transitions only move forward; failed is terminal."""

    run_id: str
    topic: str
    source: str
    theme: str
    stage: str = "created"
    progress_done: int = 0
    progress_total: int = 0
    quotes_processed: int = 0
    quotes_per_minute: float = 0.0
    created_at: float = field(default_factory=time.time)
    updated_at: float = field(default_factory=time.time)
    error: str = ""

    def advance(self, stage: str):
        if self.stage in TERMINAL_STAGES:
            raise ArgumentError(f"run {self.run_id} is terminal ({self.stage})")
        if stage == STAGE_FAILED:
            self.stage = stage
            self.updated_at = time.time()
            return
        if stage not in STAGE_ORDER:
            raise ArgumentError(f"unknown stage: {stage}")
        if STAGE_ORDER.index(stage) <= STAGE_ORDER.index(self.stage):
            raise ArgumentError(f"cannot move backward: {self.stage} -> {stage}")
        self.stage = stage
        self.updated_at = time.time()

    def fail(self, error: str):
        self.error = error
        self.advance(STAGE_FAILED)

    def set_progress(self, done: int, total: int):
        # progress never regresses, even if stages report out of order
        self.progress_done = max(self.progress_done, done)
        self.progress_total = max(self.progress_total, total)
        self.updated_at = time.time()

    def to_record(self) -> dict:
        return asdict(self)

    @classmethod
    def from_record(cls, rec: dict) -> "RunState":
        return cls(**rec)


class RunStore:
    """SQLite-backed key-value store so runs survive restarts."""

    def __init__(self, path: Union[str, Path]):
        self.path = str(path)
        self._lock = threading.Lock()
        Path(self.path).parent.mkdir(parents=True, exist_ok=True)
        with self._connect() as conn:
            conn.execute(
                "CREATE TABLE IF NOT EXISTS runs (run_id TEXT PRIMARY KEY, state TEXT NOT NULL)"
            )

    def _connect(self) -> sqlite3.Connection:
        return sqlite3.connect(self.path, timeout=10)

    def save(self, state: RunState):
        payload = json.dumps(state.to_record(), ensure_ascii=False)
        with self._lock, self._connect() as conn:
            conn.execute(
                "INSERT INTO runs (run_id, state) VALUES (?, ?) "
                "ON CONFLICT(run_id) DO UPDATE SET state = excluded.state",
                (state.run_id, payload),
            )

    def load(self, run_id: str) -> Optional[RunState]:
        with self._lock, self._connect() as conn:
            row = conn.execute("SELECT state FROM runs WHERE run_id = ?", (run_id,)).fetchone()
        if row is None:
            return None
        return RunState.from_record(json.loads(row[0]))

    def run_ids(self) -> list[str]:
        with self._lock, self._connect() as conn:
            rows = conn.execute("SELECT run_id FROM runs ORDER BY run_id").fetchall()
        return [r[0] for r in rows]
