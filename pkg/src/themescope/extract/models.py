"""Quote and validation-sheet types."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Union

from themescope.errors import ArgumentError

SUMMARY_WORD_LIMIT = 8

FORUM = "forum"
INTERVIEW = "interview"

MARK_RELEVANT = "relevant"
MARK_NOT_RELEVANT = "not_relevant"
MARK_NOT_FOUND = "not_found"
VALID_MARKS = (MARK_RELEVANT, MARK_NOT_RELEVANT, MARK_NOT_FOUND)


def clip_summary(summary: str) -> tuple[str, bool]:
    """Enforce the 8-word summary bound: truncate and flag instead of re-querying."""
    words = summary.split()
    if len(words) <= SUMMARY_WORD_LIMIT:
        return summary, False
    return " ".join(words[:SUMMARY_WORD_LIMIT]), True


@dataclass(frozen=True)
class Quote:
    """A verbatim span with provenance. quote_id is `<source_id>:<ordinal>`."""

    quote_id: str
    quote_text: str
    summary: str
    source_kind: str  # FORUM or INTERVIEW
    source_id: str
    source_title: str = ""
    community: str = ""
    verified: bool = False
    summary_truncated: bool = False

    def __post_init__(self):
        if not self.quote_text:
            raise ArgumentError("quote_text must be non-empty")
        if self.source_kind not in (FORUM, INTERVIEW):
            raise ArgumentError(f"source_kind must be forum or interview, got {self.source_kind!r}")
        if len(self.summary.split()) > SUMMARY_WORD_LIMIT:
            raise ArgumentError("summary exceeds the 8-word bound; clip it first")

    def to_record(self) -> dict:
        return {
            "quote_id": self.quote_id,
            "quote_text": self.quote_text,
            "summary": self.summary,
            "source_kind": self.source_kind,
            "source_id": self.source_id,
            "source_title": self.source_title,
            "community": self.community,
            "verified": self.verified,
            "summary_truncated": self.summary_truncated,
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "Quote":
        return cls(
            quote_id=rec["quote_id"],
            quote_text=rec["quote_text"],
            summary=rec.get("summary", ""),
            source_kind=rec["source_kind"],
            source_id=rec["source_id"],
            source_title=rec.get("source_title", ""),
            community=rec.get("community", ""),
            verified=bool(rec.get("verified", False)),
            summary_truncated=bool(rec.get("summary_truncated", False)),
        )


def write_quote_store(quotes: Iterable[Quote], path: Union[str, Path]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for q in quotes:
            fh.write(json.dumps(q.to_record(), ensure_ascii=False) + "\n")
            n += 1
    return n


def read_quote_store(path: Union[str, Path]) -> Iterator[Quote]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield Quote.from_record(json.loads(line))


@dataclass
class SheetRow:
    community: str
    source_id: str
    quote_text: str = ""
    mark: str = ""  # one of VALID_MARKS once reviewed

    def row_key(self) -> tuple[str, str, str]:
        return (self.community, self.source_id, self.quote_text)


@dataclass
class ValidationSheet:
    """Reproducible review sample handed to humans, marks filled in later."""

    seed: int
    rows: list[SheetRow] = field(default_factory=list)
    short_communities: list[str] = field(default_factory=list)
    requested_communities: int = 0
    requested_per_community: int = 0

    @property
    def flagged_short(self) -> bool:
        return bool(self.short_communities)
