"""The final report artifact: grouped, ranked, quoted, and traceable."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from themescope.themes.rank import percent_text


@dataclass(frozen=True)
class QuoteRef:
    """A quote as embedded in a report: text plus enough provenance to find it again."""

    quote_id: str
    quote_text: str
    summary: str
    source_id: str
    community: str = ""

    def to_record(self) -> dict:
        return {
            "quote_id": self.quote_id,
            "quote_text": self.quote_text,
            "summary": self.summary,
            "source_id": self.source_id,
            "community": self.community,
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "QuoteRef":
        return cls(
            quote_id=rec["quote_id"],
            quote_text=rec["quote_text"],
            summary=rec.get("summary", ""),
            source_id=rec["source_id"],
            community=rec.get("community", ""),
        )


@dataclass(frozen=True)
class ThemeEntry:
    """One ranked theme row. member_refs keep every mapped quote reviewable."""

    title: str
    description: str
    count: int
    ratio: Fraction
    quotes: tuple[QuoteRef, ...] = ()
    member_refs: tuple[QuoteRef, ...] = ()

    def percent(self, places: int = 2) -> str:
        return percent_text(self.ratio, places)

    def to_record(self) -> dict:
        # percent is derived from ratio; shipped so clients format, never compute
        return {
            "title": self.title,
            "description": self.description,
            "count": self.count,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "percent": self.percent(),
            "quotes": [q.to_record() for q in self.quotes],
            "member_refs": [q.to_record() for q in self.member_refs],
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "ThemeEntry":
        num, _, den = rec["ratio"].partition("/")
        return cls(
            title=rec["title"],
            description=rec.get("description", ""),
            count=int(rec["count"]),
            ratio=Fraction(int(num), int(den)),
            quotes=tuple(QuoteRef.from_record(q) for q in rec.get("quotes", ())),
            member_refs=tuple(QuoteRef.from_record(q) for q in rec.get("member_refs", ())),
        )


@dataclass(frozen=True)
class GroupSection:
    group_id: str
    group_name: str
    total_quotes: int
    themes: tuple[ThemeEntry, ...] = ()

    def to_record(self) -> dict:
        return {
            "group_id": self.group_id,
            "group_name": self.group_name,
            "total_quotes": self.total_quotes,
            "themes": [t.to_record() for t in self.themes],
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "GroupSection":
        return cls(
            group_id=rec["group_id"],
            group_name=rec.get("group_name", rec["group_id"]),
            total_quotes=int(rec.get("total_quotes", 0)),
            themes=tuple(ThemeEntry.from_record(t) for t in rec.get("themes", ())),
        )


@dataclass(frozen=True)
class ReportDocument:
    run_id: str
    topic: str
    source: str
    groups: tuple[GroupSection, ...]
    pipeline_version: str
    prompt_versions: Mapping[str, str]
    model_ids: Mapping[str, str]
    generated_at: str
    cache_key: str
    seed: int = 0
    notes: tuple[str, ...] = ()

    def to_record(self) -> dict:
        return {
            "run_id": self.run_id,
            "topic": self.topic,
            "source": self.source,
            "groups": [g.to_record() for g in self.groups],
            "pipeline_version": self.pipeline_version,
            "prompt_versions": dict(self.prompt_versions),
            "model_ids": dict(self.model_ids),
            "generated_at": self.generated_at,
            "cache_key": self.cache_key,
            "seed": self.seed,
            "notes": list(self.notes),
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "ReportDocument":
        return cls(
            run_id=rec["run_id"],
            topic=rec.get("topic", ""),
            source=rec.get("source", ""),
            groups=tuple(GroupSection.from_record(g) for g in rec.get("groups", ())),
            pipeline_version=rec.get("pipeline_version", ""),
            prompt_versions=dict(rec.get("prompt_versions", {})),
            model_ids=dict(rec.get("model_ids", {})),
            generated_at=rec.get("generated_at", ""),
            cache_key=rec.get("cache_key", ""),
            seed=int(rec.get("seed", 0)),
            notes=tuple(rec.get("notes", ())),
        )
