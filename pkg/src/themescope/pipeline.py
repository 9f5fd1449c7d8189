"""End-to-end orchestration: corpus in, cached analysis stages, report out."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from themescope.config import PipelineConfig
from themescope.corpus.models import DiscussionThread, InterviewTranscript
from themescope.corpus.segment import segment_interview
from themescope.extract.models import Quote
from themescope.extract.quotes import ExtractionResult, extract_quotes, filter_interview_quotes
from themescope.llm.cache import DiskCache
from themescope.llm.port import LlmPort
from themescope.llm.templates import load_template
from themescope.report.build import RunArtifacts, build_report
from themescope.report.models import ReportDocument
from themescope.report.render import ReportStore
from themescope.themes.assign import classify_high_level, map_quotes
from themescope.themes.generate import batched, generate_themes
from themescope.themes.merge import merge_themes
from themescope.themes.models import GROUP_OFF_TOPIC, HighLevelGroup, Theme, ThemeAssignment, validate_groups

logger = logging.getLogger(__name__)

ProgressFn = Callable[[str, int, int], None]  # (stage, done, total)

_PIPELINE_TEMPLATES = (
    "quote_extraction",
    "interview_message_filter",
    "theme_identification_open",
    "theme_merge",
    "quote_categorization",
    "quote_categorization_open",
)


def active_prompt_versions() -> dict[str, str]:
    return {tid: load_template(tid).version for tid in _PIPELINE_TEMPLATES}


def _quote_sort_key(q: Quote):
    source, _, ordinal = q.quote_id.rpartition(":")
    return (q.community, q.source_id, source, int(ordinal) if ordinal.isdigit() else 0)


def extract_corpus(
    threads: Sequence[DiscussionThread],
    topic: str,
    theme_focus: str,
    port: LlmPort,
    config: PipelineConfig,
    cache: Optional[DiskCache] = None,
    progress: Optional[ProgressFn] = None,
) -> ExtractionResult:
    """Per-thread extraction, parallel up to the configured worker count.

    Output and quarantine are re-ordered by (community, source id) so runs
    are byte-stable regardless of scheduling.
    """

    def one(thread: DiscussionThread) -> ExtractionResult:
        return extract_quotes(
            thread,
            topic,
            theme_focus,
            port,
            model_id=config.model_id("extract"),
            max_retries=config.max_retries,
            cache=cache,
        )

    combined = ExtractionResult()
    total = len(threads)
    with ThreadPoolExecutor(max_workers=config.concurrency) as pool:
        for i, result in enumerate(pool.map(one, threads), 1):
            combined.extend(result)
            if progress is not None:
                progress("extracting", i, total)
    combined.quotes.sort(key=_quote_sort_key)
    combined.quarantined.sort(key=_quote_sort_key)
    return combined


def extract_interviews(
    transcripts: Sequence[InterviewTranscript],
    topic: str,
    port: LlmPort,
    config: PipelineConfig,
    cache: Optional[DiskCache] = None,
    progress: Optional[ProgressFn] = None,
) -> list[Quote]:
    quotes: list[Quote] = []
    total = len(transcripts)
    for i, transcript in enumerate(transcripts, 1):
        pairs = segment_interview(transcript)
        quotes.extend(
            filter_interview_quotes(
                pairs,
                topic,
                port,
                model_id=config.model_id("filter"),
                max_retries=config.max_retries,
                cache=cache,
            )
        )
        if progress is not None:
            progress("extracting", i, total)
    quotes.sort(key=_quote_sort_key)
    return quotes


def analyze_quotes(
    quotes: Sequence[Quote],
    groups: Sequence[HighLevelGroup],
    port: LlmPort,
    config: PipelineConfig,
    cache: Optional[DiskCache] = None,
    progress: Optional[ProgressFn] = None,
) -> tuple[dict[str, str], dict[str, list[Theme]], list[ThemeAssignment]]:
    """Classification, per-group theme generation + merge, and quote mapping.

    The off-topic group exists to absorb noise: its quotes are classified
    but never themed or mapped.
    """
    classification = classify_high_level(
        quotes,
        groups,
        port,
        model_id=config.model_id("classify"),
        max_retries=config.max_retries,
        batch_size=config.batch_size,
        cache=cache,
    )
    if progress is not None:
        progress("analyzing", 1, 3)

    quotes_by_group: dict[str, list[Quote]] = {g.group_id: [] for g in groups}
    for q in quotes:
        quotes_by_group[classification[q.quote_id]].append(q)

    themes_by_group: dict[str, list[Theme]] = {}
    assignments: list[ThemeAssignment] = []
    themed_groups = [g for g in groups if g.reserved != GROUP_OFF_TOPIC]
    for group in themed_groups:
        members = quotes_by_group[group.group_id]
        if not members:
            themes_by_group[group.group_id] = []
            continue
        batches = list(batched(members, config.batch_size))
        per_batch = [
            generate_themes(
                batch,
                port,
                mode="open",
                id_prefix=f"{group.group_id}.b{bi}.",
                model_id=config.model_id("generate"),
                max_retries=config.max_retries,
                cache=cache,
            )
            for bi, batch in enumerate(batches)
        ]
        if len(per_batch) > 1:
            themes = merge_themes(
                per_batch,
                port,
                model_id=config.model_id("merge"),
                max_retries=config.max_retries,
                cache=cache,
            )
            themes = [
                Theme(
                    theme_id=f"{group.group_id}.m{i}",
                    title=t.title,
                    description=t.description,
                    sub_theme_ids=t.sub_theme_ids,
                    description_flagged=t.description_flagged,
                )
                for i, t in enumerate(themes)
            ]
        else:
            themes = per_batch[0]
        themes_by_group[group.group_id] = themes
        assignments.extend(
            map_quotes(
                members,
                themes,
                port,
                group_id=group.group_id,
                model_id=config.model_id("map"),
                max_retries=config.max_retries,
                batch_size=config.batch_size,
                cache=cache,
            )
        )
    if progress is not None:
        progress("analyzing", 3, 3)
    return classification, themes_by_group, assignments


def run_forum_pipeline(
    threads: Sequence[DiscussionThread],
    topic: str,
    theme_focus: str,
    groups: Sequence[HighLevelGroup],
    port: LlmPort,
    config: PipelineConfig,
    *,
    run_id: str,
    source: str,
    report_seed: int = 0,
    cache: Optional[DiskCache] = None,
    report_store: Optional[ReportStore] = None,
    progress: Optional[ProgressFn] = None,
    now=None,
) -> tuple[ReportDocument, RunArtifacts, ExtractionResult]:
    """The full forum run. With a report store, unchanged inputs reuse the cached document."""
    validate_groups(groups, source_kind="forum")
    extraction = extract_corpus(threads, topic, theme_focus, port, config, cache, progress)
    classification, themes_by_group, assignments = analyze_quotes(
        extraction.quotes, groups, port, config, cache, progress
    )
    artifacts = RunArtifacts(
        run_id=run_id,
        topic=topic,
        source=source,
        quotes=extraction.quotes,
        groups=groups,
        classification=classification,
        themes_by_group=themes_by_group,
        assignments=assignments,
        prompt_versions=active_prompt_versions(),
        model_ids={stage: config.model_id(stage) for stage in ("extract", "classify", "generate", "merge", "map")},
    )
    report = _build_or_reuse(artifacts, config, report_seed, report_store, now)
    return report, artifacts, extraction


def run_interview_pipeline(
    transcripts: Sequence[InterviewTranscript],
    topic: str,
    groups: Sequence[HighLevelGroup],
    port: LlmPort,
    config: PipelineConfig,
    *,
    run_id: str,
    source: str,
    report_seed: int = 0,
    cache: Optional[DiskCache] = None,
    report_store: Optional[ReportStore] = None,
    progress: Optional[ProgressFn] = None,
    now=None,
) -> tuple[ReportDocument, RunArtifacts, list[Quote]]:
    validate_groups(groups, source_kind="interview")
    quotes = extract_interviews(transcripts, topic, port, config, cache, progress)
    classification, themes_by_group, assignments = analyze_quotes(
        quotes, groups, port, config, cache, progress
    )
    artifacts = RunArtifacts(
        run_id=run_id,
        topic=topic,
        source=source,
        quotes=quotes,
        groups=groups,
        classification=classification,
        themes_by_group=themes_by_group,
        assignments=assignments,
        prompt_versions=active_prompt_versions(),
        model_ids={stage: config.model_id(stage) for stage in ("filter", "classify", "generate", "merge", "map")},
    )
    report = _build_or_reuse(artifacts, config, report_seed, report_store, now)
    return report, artifacts, quotes


def _build_or_reuse(
    artifacts: RunArtifacts,
    config: PipelineConfig,
    report_seed: int,
    report_store: Optional[ReportStore],
    now,
) -> ReportDocument:
    fresh = build_report(
        artifacts,
        quotes_per_theme=config.quotes_per_theme,
        seed=report_seed,
        share_floor=config.share_floor_fraction,
        now=now,
    )
    if report_store is None:
        return fresh
    cached = report_store.find(artifacts.run_id, fresh.cache_key)
    if cached is not None:
        logger.info("run %s: reusing cached report %s", artifacts.run_id, fresh.cache_key[:12])
        return cached
    report_store.append(fresh)
    return fresh
