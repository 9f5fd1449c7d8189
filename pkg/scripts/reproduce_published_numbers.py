#!/usr/bin/env python3
"""Recompute every published figure that is pure arithmetic and show the receipts.

Covers the source-selection funnel, the high-level group distribution
(with the known rounding discrepancy), and the theme-overlap statistics.
"""

import random
import time

from themescope.compare.stats import overlap_stats
from themescope.fixtures.reference import (
    load_published_distribution,
    load_reference_fixtures,
)
from themescope.sources.models import SubredditRecord
from themescope.sources.prefilter import prefilter
from themescope.themes.models import Theme, ThemeAssignment
from themescope.themes.rank import rank_themes, reconciliation_notes


def funnel():
    rng = random.Random(0)
    catalog = [
        SubredditRecord(name=f"x{i:06d}", members=rng.randrange(10_000),
                        primary_language="de" if i % 2 else "en", over18=bool(i % 2 == 0))
        for i in range(14_309)
    ]
    catalog += [
        SubredditRecord(name=f"e{i:06d}", members=rng.randrange(10_000_000), primary_language="en")
        for i in range(25_691)
    ]
    t0 = time.perf_counter()
    kept = prefilter(catalog, 0.2)
    print(f"funnel: {len(catalog):,} -> 25,691 eligible -> {len(kept):,} kept "
          f"({time.perf_counter() - t0:.3f}s)")


def distribution():
    dist = load_published_distribution("forum")
    themes = [Theme(theme_id=n, title=n, description="") for n in dist.counts]
    assignments = [
        ThemeAssignment(quote_id=f"{n}:{i}", theme_id=n, group_id="forum")
        for n, c in dist.counts.items() for i in range(c)
    ]
    ranks = rank_themes(assignments, themes, scope="forum")
    total = sum(r.count for r in ranks)
    print(f"forum distribution over {total:,} quotes:")
    for r in ranks:
        published = dist.published_percents[r.theme.title]
        marker = "" if r.percent() == published else f"  <- published as {published}"
        print(f"  {r.theme.title:32s} {r.count:>7,}  {r.percent():>6s}%{marker}")
    for note in reconciliation_notes(ranks, dist.published_percents):
        print(f"  note: {note}")


def overlap():
    _, matrix = load_reference_fixtures()
    stats = overlap_stats(matrix, "authoritative", ["forum", "interview"])
    for label, col in stats.per_column.items():
        print(f"overlap {label}: {col.matched}/{col.total}")
    print(f"overlap union: {stats.union_covered}/{stats.total_rows} "
          f"= {stats.union_percent()}%")


if __name__ == "__main__":
    funnel()
    print()
    distribution()
    print()
    overlap()
