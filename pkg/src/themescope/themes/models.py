"""Theme-layer domain types: groups, themes, and one-code-per-quote assignments."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, Union

from themescope.errors import ArgumentError

GROUP_NONE = "none"
GROUP_OFF_TOPIC = "off_topic"
GROUP_OTHERS = "others"

DESCRIPTION_WORDS_MIN = 10
DESCRIPTION_WORDS_MAX = 20


@dataclass(frozen=True)
class HighLevelGroup:
    """A researcher-defined top-level bucket fixed before analysis."""

    group_id: str
    name: str
    description: str = ""
    reserved: str = GROUP_NONE  # GROUP_NONE, GROUP_OFF_TOPIC or GROUP_OTHERS

    def __post_init__(self):
        if self.reserved not in (GROUP_NONE, GROUP_OFF_TOPIC, GROUP_OTHERS):
            raise ArgumentError(f"unknown reserved kind: {self.reserved!r}")


def validate_groups(groups: Sequence[HighLevelGroup], source_kind: str = "forum"):
    """Reserved-group rules: at most one of each, and none at all for interview runs."""
    if not groups:
        raise ArgumentError("at least one high-level group is required")
    ids = [g.group_id for g in groups]
    if len(set(ids)) != len(ids):
        raise ArgumentError("group ids must be unique")
    for kind in (GROUP_OFF_TOPIC, GROUP_OTHERS):
        reserved = [g for g in groups if g.reserved == kind]
        if len(reserved) > 1:
            raise ArgumentError(f"at most one {kind} group per run")
        if reserved and source_kind == "interview":
            raise ArgumentError(f"interview runs must not define a {kind} group")


def description_word_count_ok(description: str) -> bool:
    return DESCRIPTION_WORDS_MIN <= len(description.split()) <= DESCRIPTION_WORDS_MAX


@dataclass(frozen=True)
class Theme:
    """A titled cluster of quotes. sub_theme_ids index the pre-merge theme pool."""

    theme_id: str
    title: str
    description: str
    sub_theme_ids: tuple[int, ...] = ()
    description_flagged: bool = False

    def to_record(self) -> dict:
        return {
            "theme_id": self.theme_id,
            "title": self.title,
            "description": self.description,
            "sub_theme_ids": list(self.sub_theme_ids),
            "description_flagged": self.description_flagged,
        }

    @classmethod
    def from_record(cls, rec: Mapping) -> "Theme":
        return cls(
            theme_id=rec["theme_id"],
            title=rec["title"],
            description=rec.get("description", ""),
            sub_theme_ids=tuple(rec.get("sub_theme_ids", ())),
            description_flagged=bool(rec.get("description_flagged", False)),
        )


@dataclass(frozen=True)
class ThemeAssignment:
    quote_id: str
    theme_id: str
    group_id: str

    def to_record(self) -> dict:
        return {"quote_id": self.quote_id, "theme_id": self.theme_id, "group_id": self.group_id}

    @classmethod
    def from_record(cls, rec: Mapping) -> "ThemeAssignment":
        return cls(
            quote_id=rec["quote_id"], theme_id=rec["theme_id"], group_id=rec.get("group_id", "")
        )


def write_records(items: Iterable, path: Union[str, Path]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for item in items:
            fh.write(json.dumps(item.to_record(), ensure_ascii=False) + "\n")
            n += 1
    return n


def read_theme_store(path: Union[str, Path]) -> Iterator[Theme]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield Theme.from_record(json.loads(line))


def read_assignment_store(path: Union[str, Path]) -> Iterator[ThemeAssignment]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield ThemeAssignment.from_record(json.loads(line))
