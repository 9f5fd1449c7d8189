"""Loaders for the digitized reference fixtures, checksum-verified."""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass
from importlib import resources

from themescope.compare.models import MappingMatrix, ReferenceThemeList, read_mapping_matrix_csv
from themescope.compare.models import ReferenceTheme
from themescope.errors import FixtureError

ASSET_PACKAGE = "themescope.fixtures.assets.v1"


def verify_checksum(name: str, text: str, checksums: dict):
    expected = checksums.get(name)
    actual = hashlib.sha256(text.encode("utf-8")).hexdigest()
    if expected != actual:
        raise FixtureError(f"fixture {name} failed its checksum: {actual} != {expected}")


def _read_asset(name: str) -> str:
    try:
        text = resources.files(ASSET_PACKAGE).joinpath(name).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise FixtureError(f"missing fixture asset: {name}") from exc
    checksums = json.loads(
        resources.files(ASSET_PACKAGE).joinpath("CHECKSUMS.json").read_text(encoding="utf-8")
    )
    verify_checksum(name, text, checksums)
    return text


def load_authoritative_themes() -> ReferenceThemeList:
    """The 22 themes digitized from six human-authored reports."""
    themes = []
    for line in _read_asset("authoritative_themes.tsv").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        title, description, ids = line.split("\t")
        themes.append(
            ReferenceTheme(
                title=title,
                description=description,
                report_ids=tuple(int(x) for x in ids.split(",")),
            )
        )
    return ReferenceThemeList(source_name="authoritative_reports", themes=themes)


def load_theme_mapping() -> MappingMatrix:
    """The 35-row Y/N presence matrix across authoritative, forum and interview sources."""
    return read_mapping_matrix_csv(io.StringIO(_read_asset("theme_mapping.csv")))


def load_reference_fixtures() -> tuple[ReferenceThemeList, MappingMatrix]:
    return load_authoritative_themes(), load_theme_mapping()


@dataclass(frozen=True)
class PublishedDistribution:
    counts: dict[str, int]
    published_percents: dict[str, str]
    notes: tuple[str, ...]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def load_published_distribution(source: str = "forum") -> PublishedDistribution:
    """Published group counts and percents, with known-discrepancy notes attached."""
    data = json.loads(_read_asset("forum_distribution.json"))
    if source not in data or source == "notes":
        raise FixtureError(f"no published distribution for source {source!r}")
    block = data[source]
    return PublishedDistribution(
        counts=dict(block["counts"]),
        published_percents=dict(block["published_percents"]),
        notes=tuple(data["notes"]),
    )
