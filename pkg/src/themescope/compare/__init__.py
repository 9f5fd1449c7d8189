from themescope.compare.models import (
    MappingMatrix,
    ReferenceTheme,
    ReferenceThemeList,
    read_mapping_matrix_csv,
    read_reference_list,
    write_mapping_matrix_csv,
)
from themescope.compare.match import MatchSuggestion, suggest_matches
from themescope.compare.stats import OverlapStats, overlap_stats

__all__ = [
    "MappingMatrix",
    "ReferenceTheme",
    "ReferenceThemeList",
    "read_mapping_matrix_csv",
    "read_reference_list",
    "write_mapping_matrix_csv",
    "MatchSuggestion",
    "suggest_matches",
    "OverlapStats",
    "overlap_stats",
]
