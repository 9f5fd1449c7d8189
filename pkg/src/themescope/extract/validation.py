"""Sampled human-validation loop for extraction quality."""

from __future__ import annotations

import csv
import random
from collections import defaultdict
from pathlib import Path
from typing import IO, Iterable, Mapping, Optional, Sequence, Union

from themescope.corpus.models import DiscussionThread
from themescope.errors import ArgumentError
from themescope.extract.models import (
    MARK_RELEVANT,
    VALID_MARKS,
    Quote,
    SheetRow,
    ValidationSheet,
)

AGREEMENT_THRESHOLD = 0.70  # pass requires strictly more than this


def build_validation_sheet(
    corpus: Iterable[DiscussionThread],
    k_communities: int = 10,
    n_per: int = 100,
    seed: int = 0,
    quotes_by_source: Optional[Mapping[str, Sequence[Quote]]] = None,
) -> ValidationSheet:
    """Sample k communities and n entries from each, reproducibly from the seed.

    Communities with fewer than n entries contribute everything they have
    and are flagged; a corpus with fewer than k communities likewise yields
    what exists. When extraction output is supplied, each sampled entry
    expands to one row per extracted quote; entries with no quotes keep a
    single empty row so reviewers still see the sampled discussion.
    """
    by_community: dict[str, list[DiscussionThread]] = defaultdict(list)
    for thread in corpus:
        by_community[thread.subreddit].append(thread)

    rng = random.Random(seed)
    names = sorted(by_community)
    chosen = rng.sample(names, min(k_communities, len(names)))

    sheet = ValidationSheet(
        seed=seed, requested_communities=k_communities, requested_per_community=n_per
    )
    if len(names) < k_communities:
        sheet.short_communities.append("*corpus*")
    for name in chosen:
        threads = by_community[name]
        picked = rng.sample(threads, min(n_per, len(threads)))
        if len(threads) < n_per:
            sheet.short_communities.append(name)
        for thread in picked:
            quotes = (quotes_by_source or {}).get(thread.submission_id, ())
            if quotes:
                for q in quotes:
                    sheet.rows.append(
                        SheetRow(community=name, source_id=thread.submission_id, quote_text=q.quote_text)
                    )
            else:
                sheet.rows.append(SheetRow(community=name, source_id=thread.submission_id))
    return sheet


def agreement_rate(sheet: ValidationSheet) -> tuple[float, bool]:
    """Fraction of rows marked relevant, and whether it clears the strict 70% gate."""
    unmarked = [r for r in sheet.rows if not r.mark]
    if unmarked:
        listing = ", ".join(f"{r.community}/{r.source_id}" for r in unmarked[:10])
        more = "" if len(unmarked) <= 10 else f" (+{len(unmarked) - 10} more)"
        raise ArgumentError(f"unmarked sheet rows: {listing}{more}")
    if not sheet.rows:
        raise ArgumentError("sheet has no rows")
    bad = [r for r in sheet.rows if r.mark not in VALID_MARKS]
    if bad:
        raise ArgumentError(f"invalid marks: {sorted({r.mark for r in bad})}")
    rate = sum(r.mark == MARK_RELEVANT for r in sheet.rows) / len(sheet.rows)
    return rate, rate > AGREEMENT_THRESHOLD


_SHEET_FIELDS = ("community", "source_id", "quote_text", "mark")


def write_sheet_csv(sheet: ValidationSheet, dest: Union[str, Path, IO[str]]):
    close = False
    if isinstance(dest, (str, Path)):
        dest = open(dest, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(dest)
        writer.writerow(_SHEET_FIELDS)
        for row in sheet.rows:
            writer.writerow([row.community, row.source_id, row.quote_text, row.mark])
    finally:
        if close:
            dest.close()


def read_sheet_csv(src: Union[str, Path, IO[str]], seed: int = 0) -> ValidationSheet:
    close = False
    if isinstance(src, (str, Path)):
        src = open(src, "r", encoding="utf-8", newline="")
        close = True
    try:
        sheet = ValidationSheet(seed=seed)
        for rec in csv.DictReader(src):
            sheet.rows.append(
                SheetRow(
                    community=rec["community"],
                    source_id=rec["source_id"],
                    quote_text=rec.get("quote_text", ""),
                    mark=rec.get("mark", ""),
                )
            )
        return sheet
    finally:
        if close:
            src.close()
