"""LLM-proposed matches between reference and generated themes.

Suggestions are advisory: they are exported for a human to confirm or
overrule, never asserted as ground truth.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Optional, Sequence, Union

from themescope.compare.models import ReferenceThemeList
from themescope.errors import ArgumentError
from themescope.llm.cache import DiskCache, cached_complete
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template
from themescope.themes.models import Theme

logger = logging.getLogger(__name__)

MATCH_TEMPLATE = "theme_match_suggestion"


@dataclass(frozen=True)
class MatchSuggestion:
    reference_title: str
    candidate_title: Optional[str]  # None means no equivalent found
    note: str


def suggest_matches(
    generated: Sequence[Theme],
    reference: ReferenceThemeList,
    llm: LlmPort,
    *,
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> list[MatchSuggestion]:
    """At most one candidate per reference theme; hallucinated titles count as none."""
    if not generated or not reference.themes:
        raise ArgumentError("both generated and reference theme lists must be non-empty")
    titles = {t.title for t in generated}
    candidates = "\n".join(f"- {t.title}: {t.description}" for t in generated)

    suggestions = []
    for ref in reference.themes:
        req = CompletionRequest(
            template=load_template(MATCH_TEMPLATE),
            variables={
                "reference_title": ref.title,
                "reference_description": ref.description,
                "candidates": candidates,
            },
            model_id=model_id,
            expected_schema="match_suggestion",
            max_retries=max_retries,
        )
        if cache is not None:
            result = cached_complete(req, llm, cache)
        else:
            result = complete_structured(req, llm)
        match = result.value["match"]
        if match is not None and match not in titles:
            logger.warning(
                "match for %r names unknown theme %r; recording as none", ref.title, match
            )
            match = None
        suggestions.append(
            MatchSuggestion(
                reference_title=ref.title,
                candidate_title=match,
                note=result.value.get("note", ""),
            )
        )
    return suggestions


def write_suggestions_csv(
    suggestions: Sequence[MatchSuggestion], dest: Union[str, Path, IO[str]]
):
    """Export for human confirmation; the `confirmed` column starts blank."""
    close = False
    if isinstance(dest, (str, Path)):
        dest = open(dest, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(dest)
        writer.writerow(["reference_title", "candidate_title", "note", "confirmed"])
        for s in suggestions:
            writer.writerow([s.reference_title, s.candidate_title or "", s.note, ""])
    finally:
        if close:
            dest.close()
