from themescope.themes.models import (
    GROUP_NONE,
    GROUP_OFF_TOPIC,
    GROUP_OTHERS,
    HighLevelGroup,
    Theme,
    ThemeAssignment,
    validate_groups,
)
from themescope.themes.assign import classify_high_level, map_quotes
from themescope.themes.generate import batched, generate_themes
from themescope.themes.merge import check_partition, merge_themes
from themescope.themes.rank import ThemeRank, percent_text, rank_themes, reconciliation_notes

__all__ = [
    "GROUP_NONE",
    "GROUP_OFF_TOPIC",
    "GROUP_OTHERS",
    "HighLevelGroup",
    "Theme",
    "ThemeAssignment",
    "validate_groups",
    "classify_high_level",
    "map_quotes",
    "batched",
    "generate_themes",
    "check_partition",
    "merge_themes",
    "ThemeRank",
    "percent_text",
    "rank_themes",
    "reconciliation_notes",
]
