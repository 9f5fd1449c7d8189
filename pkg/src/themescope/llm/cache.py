"""On-disk completion cache: one JSON record per cache key."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional, Union

from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, StructuredResult, Usage, complete_structured

logger = logging.getLogger(__name__)


class DiskCache:
    """Digest-keyed store of validated completion results.

    Writes go through a temp file and an atomic rename, so concurrent
    readers never see a torn record. A corrupt record is treated as a miss
    (with a warning) and will be overwritten by the fresh result.
    """

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def load(self, key: str) -> Optional[dict]:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, OSError) as exc:
            logger.warning("cache record %s is unreadable (%s); treating as miss", path.name, exc)
            return None

    def save(self, key: str, record: dict):
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record, fh, ensure_ascii=False)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def __len__(self) -> int:
        return sum(1 for _ in self.root.glob("*.json"))


def cached_complete(
    req: CompletionRequest,
    port: LlmPort,
    store: DiskCache,
    check: Optional[Callable[[object], Optional[str]]] = None,
) -> StructuredResult:
    """complete_structured behind the disk cache: hits never touch the port."""
    key = req.cache_key()
    record = store.load(key)
    if record is not None and "value" in record:
        usage = record.get("usage", {})
        return StructuredResult(
            value=record["value"],
            attempts=record.get("attempts", 1),
            usage=Usage(
                usage.get("prompt_tokens", 0), usage.get("completion_tokens", 0),
                usage.get("calls", 0),
            ),
            cache_hit=True,
        )
    result = complete_structured(req, port, check=check)
    store.save(
        key,
        {
            "template_id": req.template.id,
            "template_version": req.template.version,
            "model_id": req.model_id,
            "schema": req.expected_schema,
            "value": result.value,
            "attempts": result.attempts,
            "usage": {
                "prompt_tokens": result.usage.prompt_tokens,
                "completion_tokens": result.usage.completion_tokens,
                "calls": result.usage.calls,
            },
        },
    )
    return result
