"""One-code-per-quote categorization: high-level groups and theme mapping.

Both operations feed quotes through the same numbered-code categorization
prompt; only the code list differs. Responses must cover every submitted
quote exactly once with an in-range code, or the call is retried with the
violation named.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Optional, Sequence

from themescope.errors import ArgumentError
from themescope.extract.models import Quote
from themescope.llm.cache import DiskCache, cached_complete
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template
from themescope.themes.generate import batched
from themescope.themes.models import HighLevelGroup, Theme, ThemeAssignment

FIXED_CODE_COUNT = 9


def pick_categorization_template(n_codes: int) -> str:
    # the printed prompt hardcodes a 1-9 code range; use the uncapped wording
    # whenever the code list has a different size
    return "quote_categorization" if n_codes == FIXED_CODE_COUNT else "quote_categorization_open"


def _codes_block(names_and_descriptions: Sequence[tuple[str, str]]) -> str:
    lines = [f"{i}. {name}: {desc}" for i, (name, desc) in enumerate(names_and_descriptions, 1)]
    return "Codes:\n" + "\n".join(lines)


def _quotes_block(quotes: Sequence[Quote]) -> str:
    rows = [{"source_id": q.quote_id, "quote": q.quote_text} for q in quotes]
    return "Quotes to categorize:\n" + json.dumps(rows, ensure_ascii=False)


def _make_check(quote_ids: Sequence[str], n_codes: int):
    expected = Counter(quote_ids)

    def check(value) -> Optional[str]:
        rows = value["categorized_quotes"]
        seen = Counter(r["source_id"] for r in rows)
        missing = sorted((expected - seen).elements())
        extra = sorted((seen - expected).elements())
        if missing:
            return f"these quotes were not categorized: {missing[:5]}"
        if extra:
            return f"these source ids are unknown or duplicated: {extra[:5]}"
        for r in rows:
            code = r["codes"][0]["code"]
            if not 1 <= code <= n_codes:
                return f"code {code} for {r['source_id']} is outside 1..{n_codes}"
        return None

    return check


def _categorize(
    quotes: Sequence[Quote],
    codes: Sequence[tuple[str, str]],
    llm: LlmPort,
    *,
    community: str,
    model_id: str,
    max_retries: int,
    batch_size: int,
    cache: Optional[DiskCache],
) -> dict[str, int]:
    """Map quote_id to a 1-based code index, chunking to keep prompts bounded."""
    template = load_template(pick_categorization_template(len(codes)))
    out: dict[str, int] = {}
    for chunk in batched(list(quotes), batch_size):
        req = CompletionRequest(
            template=template,
            variables={"subreddit": community},
            model_id=model_id,
            expected_schema="categorized_quotes",
            max_retries=max_retries,
            payload=_codes_block(codes) + "\n\n" + _quotes_block(chunk),
        )
        check = _make_check([q.quote_id for q in chunk], len(codes))
        if cache is not None:
            result = cached_complete(req, llm, cache, check=check)
        else:
            result = complete_structured(req, llm, check=check)
        for row in result.value["categorized_quotes"]:
            out[row["source_id"]] = row["codes"][0]["code"]
    return out


def classify_high_level(
    quotes: Sequence[Quote],
    groups: Sequence[HighLevelGroup],
    llm: LlmPort,
    *,
    model_id: str = "default",
    max_retries: int = 2,
    batch_size: int = 500,
    cache: Optional[DiskCache] = None,
) -> dict[str, str]:
    """Total mapping of quote_id to group_id; every quote lands in exactly one group."""
    if not groups:
        raise ArgumentError("groups must be non-empty")
    if not quotes:
        return {}
    community = quotes[0].community
    codes = [(g.name, g.description) for g in groups]
    by_index = _categorize(
        quotes,
        codes,
        llm,
        community=community,
        model_id=model_id,
        max_retries=max_retries,
        batch_size=batch_size,
        cache=cache,
    )
    return {qid: groups[idx - 1].group_id for qid, idx in by_index.items()}


def map_quotes(
    quotes: Sequence[Quote],
    themes: Sequence[Theme],
    llm: LlmPort,
    *,
    group_id: str = "",
    model_id: str = "default",
    max_retries: int = 2,
    batch_size: int = 500,
    cache: Optional[DiskCache] = None,
) -> list[ThemeAssignment]:
    """Assign the one most relevant theme to every quote."""
    if not themes:
        raise ArgumentError("themes must be non-empty")
    if not quotes:
        return []
    community = quotes[0].community
    codes = [(t.title, t.description) for t in themes]
    by_index = _categorize(
        quotes,
        codes,
        llm,
        community=community,
        model_id=model_id,
        max_retries=max_retries,
        batch_size=batch_size,
        cache=cache,
    )
    return [
        ThemeAssignment(quote_id=q.quote_id, theme_id=themes[by_index[q.quote_id] - 1].theme_id, group_id=group_id)
        for q in quotes
    ]
