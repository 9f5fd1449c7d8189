"""Interactive workflow steps: source recommendation and theme suggestions."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from themescope.errors import ArgumentError
from themescope.llm.cache import DiskCache, cached_complete
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template

logger = logging.getLogger(__name__)

RECOMMEND_TEMPLATE = "source_recommendation"
SUGGEST_TEMPLATE = "high_level_theme_suggestion"
SUGGESTED_THEME_COUNT = 9


def recommend_sources(
    topic: str,
    catalog_names: Sequence[str],
    llm: LlmPort,
    *,
    chunk_size: int = 200,
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> list[str]:
    """Union of per-chunk recommendations, deduplicated, catalog membership enforced.

    Names the model invents are dropped and logged, never surfaced. An
    empty recommendation is a valid answer.
    """
    if not catalog_names:
        raise ArgumentError("catalog must be non-empty")
    if chunk_size < 1:
        raise ArgumentError("chunk_size must be >= 1")
    known = set(catalog_names)
    recommended: list[str] = []
    seen = set()
    template = load_template(RECOMMEND_TEMPLATE)
    for start in range(0, len(catalog_names), chunk_size):
        chunk = catalog_names[start : start + chunk_size]
        req = CompletionRequest(
            template=template,
            variables={"subreddits_chunk": ", ".join(chunk), "topic": topic},
            model_id=model_id,
            expected_schema="comma_list",
            max_retries=max_retries,
        )
        if cache is not None:
            result = cached_complete(req, llm, cache)
        else:
            result = complete_structured(req, llm)
        for name in result.value:
            if name not in known:
                logger.warning("recommendation named %r, which is not in the catalog; dropped", name)
                continue
            if name not in seen:
                seen.add(name)
                recommended.append(name)
    return recommended


def suggest_high_level_themes(
    source: str,
    llm: LlmPort,
    *,
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> list[dict]:
    """Exactly nine titled suggestions for the selected source."""

    def check(value):
        if len(value) != SUGGESTED_THEME_COUNT:
            return f"expected exactly {SUGGESTED_THEME_COUNT} themes, got {len(value)}"
        return None

    req = CompletionRequest(
        template=load_template(SUGGEST_TEMPLATE),
        variables={"subreddit": source},
        model_id=model_id,
        expected_schema="suggested_themes",
        max_retries=max_retries,
    )
    if cache is not None:
        result = cached_complete(req, llm, cache, check=check)
    else:
        result = complete_structured(req, llm, check=check)
    return [{"title": t["title"], "description": t["description"]} for t in result.value]
