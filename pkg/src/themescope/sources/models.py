"""Source-selection domain types."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Union

from themescope.errors import ArgumentError


@dataclass(frozen=True)
class SubredditRecord:
    """Community metadata as returned by the platform's about endpoint."""

    name: str
    members: int
    primary_language: str = ""
    over18: bool = False
    description: str = ""

    def __post_init__(self):
        if not self.name:
            raise ArgumentError("subreddit name must be non-empty")
        if self.members < 0:
            raise ArgumentError(f"members must be non-negative for {self.name}")

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "members": self.members,
            "primary_language": self.primary_language,
            "over18": self.over18,
            "description": self.description,
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "SubredditRecord":
        return cls(
            name=str(rec["name"]),
            members=int(rec.get("members", 0)),
            primary_language=rec.get("primary_language", "") or "",
            over18=bool(rec.get("over18", False)),
            description=rec.get("description", "") or "",
        )


@dataclass(frozen=True)
class RelevanceLabel:
    """Dual 1-5 relevance judgment with rationales."""

    population_relevance: int
    population_reason: str
    content_relevance: int
    content_reason: str

    def __post_init__(self):
        for name in ("population_relevance", "content_relevance"):
            score = getattr(self, name)
            if not isinstance(score, int) or not 1 <= score <= 5:
                raise ArgumentError(f"{name} must be an integer in 1..5, got {score!r}")

    def to_record(self) -> dict:
        return {
            "population_relevance": self.population_relevance,
            "population_reason": self.population_reason,
            "content_relevance": self.content_relevance,
            "content_reason": self.content_reason,
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "RelevanceLabel":
        return cls(
            population_relevance=int(rec["population_relevance"]),
            population_reason=rec.get("population_reason", ""),
            content_relevance=int(rec["content_relevance"]),
            content_reason=rec.get("content_reason", ""),
        )


@dataclass
class CalibrationSample:
    """A reproducible without-replacement sample awaiting human and LLM labels."""

    seed: int
    sampled_names: list[str]
    human_labels: dict[str, RelevanceLabel] = field(default_factory=dict)
    llm_labels: dict[str, RelevanceLabel] = field(default_factory=dict)

    def check_complete(self):
        names = set(self.sampled_names)
        for kind, labels in (("human", self.human_labels), ("llm", self.llm_labels)):
            missing = sorted(names - set(labels))
            if missing:
                raise ArgumentError(f"missing {kind} labels for: {', '.join(missing)}")
            stray = sorted(set(labels) - names)
            if stray:
                raise ArgumentError(f"{kind} labels for names outside the sample: {', '.join(stray)}")


def read_catalog(path: Union[str, Path]) -> Iterator[SubredditRecord]:
    """Catalog file: one JSON record per line with the four metadata fields."""
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield SubredditRecord.from_record(json.loads(line))


def write_catalog(records: Iterable[SubredditRecord], path: Union[str, Path]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_record(), ensure_ascii=False) + "\n")
            n += 1
    return n
