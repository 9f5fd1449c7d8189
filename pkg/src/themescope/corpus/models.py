"""Normalized corpus structures: discussion threads and interview transcripts."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Mapping

from themescope.errors import ArgumentError

BOT = "bot"
HUMAN = "human"


def parse_timestamp(value) -> datetime:
    """Accept epoch seconds (int/float/numeric str) or ISO-8601; always return UTC."""
    if isinstance(value, (int, float)):
        return datetime.fromtimestamp(value, tz=timezone.utc)
    if isinstance(value, str):
        text = value.strip()
        try:
            return datetime.fromtimestamp(float(text), tz=timezone.utc)
        except ValueError:
            pass
        dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return dt.astimezone(timezone.utc)
    raise ArgumentError(f"unparseable timestamp: {value!r}")


@dataclass(frozen=True)
class DiscussionThread:
    """One forum submission plus its comments flattened in archive order.

    Immutable after construction; safe to hand across workers.
    """

    submission_id: str
    subreddit: str
    title: str
    body: str
    comments: tuple[str, ...]
    created_at: datetime

    def __post_init__(self):
        if not self.submission_id:
            raise ArgumentError("submission_id must be non-empty")
        object.__setattr__(self, "comments", tuple(self.comments))

    def full_text(self) -> str:
        """All thread text in reading order, for provenance checks."""
        return "\n".join([self.title, self.body, *self.comments])

    def to_record(self) -> dict:
        return {
            "submission_id": self.submission_id,
            "subreddit": self.subreddit,
            "title": self.title,
            "body": self.body,
            "comments": list(self.comments),
            "created_at": self.created_at.isoformat(),
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "DiscussionThread":
        return cls(
            submission_id=str(rec["submission_id"]),
            subreddit=rec.get("subreddit", ""),
            title=rec.get("title", ""),
            body=rec.get("body", ""),
            comments=tuple(rec.get("comments", ())),
            created_at=parse_timestamp(rec["created_at"]),
        )


@dataclass(frozen=True)
class Turn:
    speaker: str  # BOT or HUMAN
    text: str
    index: int

    def __post_init__(self):
        if self.speaker not in (BOT, HUMAN):
            raise ArgumentError(f"speaker must be {BOT!r} or {HUMAN!r}, got {self.speaker!r}")


@dataclass(frozen=True)
class InterviewTranscript:
    """A chatbot-led interview: strictly ordered turns plus optional demographics."""

    transcript_id: str
    turns: tuple[Turn, ...]
    demographics: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "turns", tuple(self.turns))
        indices = [t.index for t in self.turns]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ArgumentError(f"turn indices must be strictly increasing in {self.transcript_id}")

    def to_record(self) -> dict:
        return {
            "transcript_id": self.transcript_id,
            "turns": [
                {"speaker": t.speaker, "text": t.text, "index": t.index} for t in self.turns
            ],
            "demographics": dict(self.demographics),
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "InterviewTranscript":
        turns = tuple(
            Turn(speaker=t["speaker"], text=t.get("text", ""), index=int(t["index"]))
            for t in rec.get("turns", ())
        )
        return cls(
            transcript_id=str(rec["transcript_id"]),
            turns=turns,
            demographics=dict(rec.get("demographics", {})),
        )

    def full_text(self) -> str:
        return "\n".join(t.text for t in self.turns)


@dataclass(frozen=True)
class QAPair:
    """One bot question with every consecutive human reply concatenated.

    answer_fragments keeps the pre-join human turns so conservation of
    human text across segmentation stays checkable.
    """

    transcript_id: str
    pair_index: int
    question: str
    answer_fragments: tuple[str, ...]

    @property
    def answer(self) -> str:
        return " ".join(self.answer_fragments)
