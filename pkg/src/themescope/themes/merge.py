"""Cross-batch theme merge with strict partition enforcement."""

from __future__ import annotations

import json
from collections import Counter
from typing import Optional, Sequence

from themescope.errors import ArgumentError, PartitionViolation, StructuredOutputError
from themescope.llm.cache import DiskCache, cached_complete
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template
from themescope.themes.models import Theme, description_word_count_ok

MERGE_TEMPLATE = "theme_merge"


def check_partition(clusters: Sequence[Sequence[int]], n_inputs: int) -> Optional[str]:
    """Violation message unless the clusters exactly partition 0..n_inputs-1."""
    counts = Counter()
    for cluster in clusters:
        counts.update(cluster)
    invented = sorted(i for i in counts if not 0 <= i < n_inputs)
    if invented:
        return f"invented indices not in the input: {invented}"
    duplicated = sorted(i for i, c in counts.items() if c > 1)
    if duplicated:
        return f"indices appear in more than one cluster: {duplicated}"
    missing = sorted(set(range(n_inputs)) - set(counts))
    if missing:
        return f"missing indices: {missing}"
    return None


def _merge_payload(lists: Sequence[Sequence[Theme]]) -> str:
    indexed = []
    i = 0
    for themes in lists:
        block = []
        for theme in themes:
            block.append({"index": i, "title": theme.title, "description": theme.description})
            i += 1
        indexed.append(block)
    return "Theme lists:\n" + json.dumps(indexed, ensure_ascii=False)


def merge_themes(
    lists: Sequence[Sequence[Theme]],
    llm: LlmPort,
    *,
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> list[Theme]:
    """Merge per-batch theme lists into one deduplicated, rank-ordered list.

    Input themes are globally indexed 0..N-1 in list order. The model's
    clusters must exactly partition those indices; a violating response is
    retried with the violation named and, if never repaired, surfaces as a
    StructuredOutputError whose detail is a PartitionViolation.
    """
    n_inputs = sum(len(block) for block in lists)
    if n_inputs == 0:
        raise ArgumentError("nothing to merge: all input lists are empty")

    def check(value) -> Optional[str]:
        return check_partition([row["sub_theme_ids"] for row in value], n_inputs)

    req = CompletionRequest(
        template=load_template(MERGE_TEMPLATE),
        variables={},
        model_id=model_id,
        expected_schema="merged_themes",
        max_retries=max_retries,
        payload=_merge_payload(lists),
    )
    try:
        if cache is not None:
            result = cached_complete(req, llm, cache, check=check)
        else:
            result = complete_structured(req, llm, check=check)
    except StructuredOutputError as exc:
        if isinstance(exc.detail, str) and (
            "indices" in exc.detail or "missing" in exc.detail
        ):
            exc.detail = PartitionViolation(exc.detail)
        raise

    merged = []
    for i, row in enumerate(result.value):
        merged.append(
            Theme(
                theme_id=f"m{i}",
                title=row["theme_title"],
                description=row["theme_description"],
                sub_theme_ids=tuple(row["sub_theme_ids"]),
                description_flagged=not description_word_count_ok(row["theme_description"]),
            )
        )
    return merged
