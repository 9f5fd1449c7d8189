"""Bottom-up theme generation over quote batches."""

from __future__ import annotations

import json
from typing import Iterator, Optional, Sequence, TypeVar

from themescope.errors import ArgumentError
from themescope.extract.models import Quote
from themescope.llm.cache import DiskCache, cached_complete
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template
from themescope.themes.models import Theme, description_word_count_ok

MODE_FIXED9 = "fixed9"
MODE_OPEN = "open"
DEFAULT_BATCH_SIZE = 500

T = TypeVar("T")


def batched(items: Sequence[T], size: int) -> Iterator[list[T]]:
    """Consecutive chunks of at most `size`; the final short batch is kept as-is."""
    if size < 1:
        raise ArgumentError(f"batch size must be >= 1, got {size}")
    for start in range(0, len(items), size):
        yield list(items[start : start + size])


def _summaries_payload(batch: Sequence[Quote]) -> str:
    rows = [{"summary": q.summary, "quote": q.quote_text} for q in batch]
    return "Summaries:\n" + json.dumps(rows, ensure_ascii=False)


def generate_themes(
    batch: Sequence[Quote],
    llm: LlmPort,
    mode: str = MODE_OPEN,
    *,
    id_prefix: str = "t",
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> list[Theme]:
    """Identify themes in one batch of quotes.

    fixed9 mode must return exactly 9 themes (retried, then error); open
    mode accepts whatever count the model finds. Descriptions outside the
    10-20 word band are flagged, not rejected.
    """
    if not batch:
        raise ArgumentError("batch must be non-empty")
    if mode not in (MODE_FIXED9, MODE_OPEN):
        raise ArgumentError(f"mode must be {MODE_FIXED9!r} or {MODE_OPEN!r}")
    template = load_template(
        "theme_identification_fixed9" if mode == MODE_FIXED9 else "theme_identification_open"
    )

    def check(value) -> Optional[str]:
        if mode == MODE_FIXED9 and len(value["codes"]) != 9:
            return f"expected exactly 9 codes, got {len(value['codes'])}"
        return None

    req = CompletionRequest(
        template=template,
        variables={"subreddit": batch[0].community},
        model_id=model_id,
        expected_schema="theme_codes",
        max_retries=max_retries,
        payload=_summaries_payload(batch),
    )
    if cache is not None:
        result = cached_complete(req, llm, cache, check=check)
    else:
        result = complete_structured(req, llm, check=check)

    themes = []
    for i, code in enumerate(result.value["codes"]):
        themes.append(
            Theme(
                theme_id=f"{id_prefix}{i}",
                title=code["name"],
                description=code["description"],
                description_flagged=not description_word_count_ok(code["description"]),
            )
        )
    return themes
