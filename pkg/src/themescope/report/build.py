"""Report assembly from completed run artifacts, plus the review sampler."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from themescope import PIPELINE_VERSION
from themescope.errors import StageError
from themescope.extract.models import Quote
from themescope.report.models import GroupSection, QuoteRef, ReportDocument, ThemeEntry
from themescope.themes.models import GROUP_OFF_TOPIC, HighLevelGroup, Theme, ThemeAssignment
from themescope.themes.rank import rank_themes

DEFAULT_SHARE_FLOOR = Fraction(1, 100)  # themes below 1% of their group are tail


@dataclass
class RunArtifacts:
    """Everything a finished analysis run produced, ready for assembly."""

    run_id: str
    topic: str
    source: str
    quotes: Sequence[Quote]
    groups: Sequence[HighLevelGroup]
    classification: Optional[Mapping[str, str]] = None  # quote_id -> group_id
    themes_by_group: Optional[Mapping[str, Sequence[Theme]]] = None
    assignments: Optional[Sequence[ThemeAssignment]] = None
    prompt_versions: Mapping[str, str] = field(default_factory=dict)
    model_ids: Mapping[str, str] = field(default_factory=dict)


def _quote_ref(q: Quote) -> QuoteRef:
    return QuoteRef(
        quote_id=q.quote_id,
        quote_text=q.quote_text,
        summary=q.summary,
        source_id=q.source_id,
        community=q.community,
    )


def _fingerprint(
    artifacts: RunArtifacts, seed: int, quotes_per_theme: int, share_floor: Fraction,
    top_k: Optional[int],
) -> str:
    material = json.dumps(
        {
            "pipeline_version": PIPELINE_VERSION,
            "run_id": artifacts.run_id,
            "topic": artifacts.topic,
            "source": artifacts.source,
            "seed": seed,
            "quotes_per_theme": quotes_per_theme,
            "share_floor": str(share_floor),
            "top_k": top_k,
            "quotes": [q.to_record() for q in artifacts.quotes],
            "groups": [(g.group_id, g.name, g.reserved) for g in artifacts.groups],
            "classification": dict(sorted((artifacts.classification or {}).items())),
            "themes": {
                gid: [t.to_record() for t in themes]
                for gid, themes in sorted((artifacts.themes_by_group or {}).items())
            },
            "assignments": [a.to_record() for a in (artifacts.assignments or ())],
            "prompt_versions": dict(sorted(artifacts.prompt_versions.items())),
            "model_ids": dict(sorted(artifacts.model_ids.items())),
        },
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


def build_report(
    artifacts: RunArtifacts,
    *,
    quotes_per_theme: int = 1,
    seed: int = 0,
    share_floor: Fraction = DEFAULT_SHARE_FLOOR,
    top_k: Optional[int] = None,
    notes: Sequence[str] = (),
    now: Optional[datetime] = None,
) -> ReportDocument:
    """Assemble the grouped, ranked, quoted document.

    Representative quotes are drawn per theme by a sampler seeded from
    (seed, group, theme), so the same artifacts and seed always pick the
    same quotes. Themes under `share_floor` of their group total (or past
    `top_k`, when set) are left out of the document; their counts remain
    implicit in the group total and the cutoff is recorded in the notes.
    """
    if artifacts.classification is None:
        raise StageError("classification")
    if artifacts.themes_by_group is None:
        raise StageError("themes")
    if artifacts.assignments is None:
        raise StageError("assignments")

    quotes_by_id = {q.quote_id: q for q in artifacts.quotes}
    members: dict[str, list[Quote]] = {}
    for a in artifacts.assignments:
        if a.quote_id in quotes_by_id:
            members.setdefault(f"{a.group_id}|{a.theme_id}", []).append(quotes_by_id[a.quote_id])

    sections = []
    for group in artifacts.groups:
        group_total = sum(
            1 for gid in artifacts.classification.values() if gid == group.group_id
        )
        themes = list(artifacts.themes_by_group.get(group.group_id, ()))
        entries = []
        if themes and group.reserved != GROUP_OFF_TOPIC:
            ranks = rank_themes(list(artifacts.assignments), themes, scope=group.group_id)
            if top_k is not None:
                ranks = ranks[:top_k]
            for rank in ranks:
                if rank.ratio < share_floor:
                    continue
                pool = members.get(f"{group.group_id}|{rank.theme.theme_id}", [])
                rng = random.Random(f"{seed}:{group.group_id}:{rank.theme.theme_id}")
                picked = rng.sample(pool, min(quotes_per_theme, len(pool)))
                entries.append(
                    ThemeEntry(
                        title=rank.theme.title,
                        description=rank.theme.description,
                        count=rank.count,
                        ratio=rank.ratio,
                        quotes=tuple(_quote_ref(q) for q in picked),
                        member_refs=tuple(_quote_ref(q) for q in pool),
                    )
                )
        sections.append(
            GroupSection(
                group_id=group.group_id,
                group_name=group.name,
                total_quotes=group_total,
                themes=tuple(entries),
            )
        )

    all_notes = list(notes)
    all_notes.append(f"themes below {str(share_floor)} of their group total are omitted")
    if top_k is not None:
        all_notes.append(f"each group shows at most its top {top_k} themes by count")
    stamp = (now or datetime.now(timezone.utc)).isoformat()
    return ReportDocument(
        run_id=artifacts.run_id,
        topic=artifacts.topic,
        source=artifacts.source,
        groups=tuple(sections),
        pipeline_version=PIPELINE_VERSION,
        prompt_versions=dict(artifacts.prompt_versions),
        model_ids=dict(artifacts.model_ids),
        generated_at=stamp,
        cache_key=_fingerprint(artifacts, seed, quotes_per_theme, share_floor, top_k),
        seed=seed,
        notes=tuple(all_notes),
    )


@dataclass
class ReviewRow:
    group: str
    theme: str
    quote_id: str
    source_id: str
    quote_text: str


@dataclass
class ReviewSheet:
    seed: int
    rows: list[ReviewRow] = field(default_factory=list)
    short_themes: list[str] = field(default_factory=list)


def review_sample(report: ReportDocument, per_theme: int = 3, seed: int = 0) -> ReviewSheet:
    """Per theme, min(per_theme, available) quotes for manual provenance review."""
    sheet = ReviewSheet(seed=seed)
    for section in report.groups:
        for entry in section.themes:
            pool = list(entry.member_refs)
            rng = random.Random(f"review:{seed}:{section.group_id}:{entry.title}")
            picked = rng.sample(pool, min(per_theme, len(pool)))
            if len(pool) < per_theme:
                sheet.short_themes.append(entry.title)
            for ref in picked:
                sheet.rows.append(
                    ReviewRow(
                        group=section.group_name,
                        theme=entry.title,
                        quote_id=ref.quote_id,
                        source_id=ref.source_id,
                        quote_text=ref.quote_text,
                    )
                )
    return sheet
