"""Quote extraction from threads and Q-A pairs, with provenance quarantine."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from themescope.corpus.models import DiscussionThread, QAPair
from themescope.extract.models import FORUM, INTERVIEW, Quote, clip_summary
from themescope.extract.provenance import verify_provenance
from themescope.llm.cache import DiskCache, cached_complete
from themescope.llm.port import LlmPort
from themescope.llm.structured import CompletionRequest, complete_structured
from themescope.llm.templates import load_template

logger = logging.getLogger(__name__)

EXTRACTION_TEMPLATE = "quote_extraction"
INTERVIEW_FILTER_TEMPLATE = "interview_message_filter"


@dataclass
class ExtractionResult:
    """Verified quotes plus the quarantined remainder; nothing is silently dropped."""

    quotes: list[Quote] = field(default_factory=list)
    quarantined: list[Quote] = field(default_factory=list)

    def extend(self, other: "ExtractionResult"):
        self.quotes.extend(other.quotes)
        self.quarantined.extend(other.quarantined)


def _thread_payload(thread: DiscussionThread) -> str:
    data = {
        "submission_id": thread.submission_id,
        "title": thread.title,
        "body": thread.body,
        "comments": list(thread.comments),
    }
    return "Data:\n" + json.dumps(data, ensure_ascii=False)


def extract_quotes(
    thread: DiscussionThread,
    topic: str,
    theme_focus: str,
    llm: LlmPort,
    *,
    theme: Optional[str] = None,
    concerns_scope: Optional[str] = None,
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> ExtractionResult:
    """Extract topic-relevant verbatim quotes from one thread.

    A null model response is a valid "nothing relevant here". Every
    returned quote is verified against the thread text; failures land in
    the quarantine list for audit instead of the output.
    """
    req = CompletionRequest(
        template=load_template(EXTRACTION_TEMPLATE),
        variables={
            "subreddit": thread.subreddit,
            "topic": topic,
            "theme": theme if theme is not None else theme_focus,
            "theme_focus": theme_focus,
            "concerns_scope": concerns_scope if concerns_scope is not None else theme_focus,
        },
        model_id=model_id,
        expected_schema="quote_entries",
        max_retries=max_retries,
        payload=_thread_payload(thread),
    )
    if cache is not None:
        result = cached_complete(req, llm, cache)
    else:
        result = complete_structured(req, llm)

    entries = []
    if result.value is not None:
        entries = result.value.get("entries") or []

    out = ExtractionResult()
    source_text = thread.full_text()
    for i, entry in enumerate(entries):
        summary, truncated = clip_summary(entry.get("summary", ""))
        verified = verify_provenance(entry["quote"], source_text)
        quote = Quote(
            quote_id=f"{thread.submission_id}:{i}",
            quote_text=entry["quote"],
            summary=summary,
            source_kind=FORUM,
            source_id=thread.submission_id,
            source_title=thread.title,
            community=thread.subreddit,
            verified=verified,
            summary_truncated=truncated,
        )
        if verified:
            out.quotes.append(quote)
        else:
            out.quarantined.append(quote)
    if out.quarantined:
        logger.info(
            "thread %s: quarantined %d of %d extracted quotes",
            thread.submission_id,
            len(out.quarantined),
            len(entries),
        )
    return out


def filter_interview_quotes(
    pairs: Sequence[QAPair],
    topic: str,
    llm: LlmPort,
    *,
    model_id: str = "default",
    max_retries: int = 2,
    cache: Optional[DiskCache] = None,
) -> list[Quote]:
    """Turn substantive human answers into quotes, dropping transitional messages.

    One keep/drop judgment per Q-A pair; every decision is logged. Retained
    answers become interview quotes verbatim, so provenance holds by
    construction and is still recorded.
    """
    quotes: list[Quote] = []
    for pair in pairs:
        req = CompletionRequest(
            template=load_template(INTERVIEW_FILTER_TEMPLATE),
            variables={"topic": topic, "question": pair.question, "answer": pair.answer},
            model_id=model_id,
            expected_schema="keep_decision",
            max_retries=max_retries,
        )
        if cache is not None:
            result = cached_complete(req, llm, cache)
        else:
            result = complete_structured(req, llm)
        decision = result.value
        logger.debug(
            "transcript %s pair %d: keep=%s", pair.transcript_id, pair.pair_index, decision["keep"]
        )
        if not decision["keep"]:
            continue
        summary, truncated = clip_summary(decision.get("summary", ""))
        quotes.append(
            Quote(
                quote_id=f"{pair.transcript_id}:{pair.pair_index}",
                quote_text=pair.answer,
                summary=summary,
                source_kind=INTERVIEW,
                source_id=pair.transcript_id,
                source_title=pair.question,
                community="",
                verified=True,
                summary_truncated=truncated,
            )
        )
    return quotes
