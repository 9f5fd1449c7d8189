"""LLM relevance scoring of candidate sources and threshold binarization."""

from __future__ import annotations

from themescope.errors import ArgumentError, ScoringError, StructuredOutputError
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template
from themescope.sources.models import RelevanceLabel, SubredditRecord

SCORING_TEMPLATE = "source_relevance_labeling"


def score_source(
    record: SubredditRecord,
    topic: str,
    target_group: str,
    llm: LlmPort,
    *,
    model_id: str = "default",
    max_retries: int = 2,
) -> RelevanceLabel:
    """Ask the model for dual 1-5 relevance scores with rationales.

    An empty description is passed through as an empty string. Output that
    never validates raises ScoringError carrying the raw model text.
    """
    req = CompletionRequest(
        template=load_template(SCORING_TEMPLATE),
        variables={
            "target_group": target_group,
            "topic": topic,
            "subreddit": record.name,
            "about": record.description or "",
        },
        model_id=model_id,
        expected_schema="relevance_label",
        max_retries=max_retries,
    )
    try:
        result = complete_structured(req, llm)
    except StructuredOutputError as exc:
        raise ScoringError(
            f"relevance scoring for {record.name} failed: {exc}", raw_text=exc.raw_text
        ) from exc
    return RelevanceLabel.from_record(result.value)


def binarize(label: RelevanceLabel, pop_threshold: int = 3, content_threshold: int = 4) -> bool:
    """Include a source iff both scores clear their thresholds."""
    for name, value in (("pop_threshold", pop_threshold), ("content_threshold", content_threshold)):
        if not 1 <= value <= 5:
            raise ArgumentError(f"{name} must be in 1..5, got {value}")
    return (
        label.population_relevance >= pop_threshold
        and label.content_relevance >= content_threshold
    )
