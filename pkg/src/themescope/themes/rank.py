"""Prevalence ranking: counts kept exact, percents rendered half-up at the edge."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from themescope.errors import ArgumentError
from themescope.themes.models import Theme, ThemeAssignment


def percent_text(ratio: Fraction, places: int = 2) -> str:
    """Render an exact ratio as a percentage, rounded half-up, no float in sight."""
    if ratio < 0:
        raise ArgumentError("ratios are non-negative")
    scale = 10**places
    units = math.floor(ratio * 100 * scale + Fraction(1, 2))
    whole, frac = divmod(units, scale)
    if places == 0:
        return str(whole)
    return f"{whole}.{frac:0{places}d}"


@dataclass(frozen=True)
class ThemeRank:
    theme: Theme
    count: int
    ratio: Fraction  # count / total assignments in scope, exact

    def percent(self, places: int = 2) -> str:
        return percent_text(self.ratio, places)


def rank_themes(
    assignments: Sequence[ThemeAssignment],
    themes: Sequence[Theme],
    scope: Optional[str] = None,
) -> list[ThemeRank]:
    """Count assignments per theme within a group scope and sort by prevalence.

    Ordering is total: count descending, then title ascending, then theme id,
    so equal inputs always rank identically. Themes with zero assignments in
    scope are omitted.
    """
    in_scope = [a for a in assignments if scope is None or a.group_id == scope]
    if not in_scope:
        return []
    by_id = {t.theme_id: t for t in themes}
    unknown = sorted({a.theme_id for a in in_scope} - set(by_id))
    if unknown:
        raise ArgumentError(f"assignments reference unknown themes: {unknown}")

    counts = Counter(a.theme_id for a in in_scope)
    total = len(in_scope)
    ranks = [
        ThemeRank(theme=by_id[tid], count=c, ratio=Fraction(c, total))
        for tid, c in counts.items()
    ]
    ranks.sort(key=lambda r: (-r.count, r.theme.title, r.theme.theme_id))
    return ranks


def reconciliation_notes(
    ranks: Sequence[ThemeRank], published_percents: Mapping[str, str], places: int = 2
) -> list[str]:
    """One note per theme whose published percent differs from exact arithmetic.

    Keyed by theme title; silent where the published figure matches.
    """
    notes = []
    for rank in ranks:
        published = published_percents.get(rank.theme.title)
        if published is None:
            continue
        computed = rank.percent(places)
        if computed != published:
            total = int(Fraction(rank.count) / rank.ratio)
            notes.append(
                f"{rank.theme.title}: published {published}% but {rank.count}/{total} "
                f"computes to {computed}% (half-up, {places} dp)"
            )
    return notes
