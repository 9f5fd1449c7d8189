"""Metadata prefilter: drop adult-only and non-English communities, keep the largest slice."""

from __future__ import annotations

import math
from typing import Iterable

from themescope.errors import ArgumentError
from themescope.sources.models import SubredditRecord


def is_english(language_code: str) -> bool:
    """Unknown or empty codes count as non-English (conservative exclusion)."""
    if not language_code:
        return False
    return language_code.strip().lower().split("-")[0] == "en"


def prefilter(catalog: Iterable[SubredditRecord], top_fraction: float) -> list[SubredditRecord]:
    """Apply exclusions, then keep the floor(top_fraction * remaining) largest by members.

    Member-count ties break by name ascending; output is sorted by members
    descending so downstream steps see the biggest communities first.
    """
    if not 0 < top_fraction <= 1:
        raise ArgumentError(f"top_fraction must be in (0, 1], got {top_fraction}")
    eligible = [r for r in catalog if not r.over18 and is_english(r.primary_language)]
    eligible.sort(key=lambda r: (-r.members, r.name))
    keep = math.floor(top_fraction * len(eligible))
    return eligible[:keep]
