"""Overlap arithmetic over the presence matrix."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from themescope.compare.models import MappingMatrix
from themescope.themes.rank import percent_text


@dataclass(frozen=True)
class ColumnOverlap:
    matched: int  # rows present in both this column and the reference column
    total: int  # rows present in the reference column

    def percent(self, places: int = 1) -> str:
        return percent_text(Fraction(self.matched, self.total), places)


@dataclass(frozen=True)
class OverlapStats:
    per_column: Mapping[str, ColumnOverlap]
    union_covered: int  # rows present in at least one non-reference column
    total_rows: int
    unique_to_reference: int
    unique_to_others: int

    def union_percent(self, places: int = 1) -> str:
        return percent_text(Fraction(self.union_covered, self.total_rows), places)


def overlap_stats(
    matrix: MappingMatrix, reference_column: str, other_columns: Sequence[str]
) -> OverlapStats:
    """Pure boolean arithmetic; row order never matters."""
    ref = matrix.column(reference_column)
    others = {label: matrix.column(label) for label in other_columns}

    per_column = {}
    ref_total = sum(ref)
    for label, col in others.items():
        matched = sum(1 for r, c in zip(ref, col) if r and c)
        per_column[label] = ColumnOverlap(matched=matched, total=ref_total)

    union = [any(col[i] for col in others.values()) for i in range(len(ref))]
    return OverlapStats(
        per_column=per_column,
        union_covered=sum(union),
        total_rows=len(matrix.rows),
        unique_to_reference=sum(1 for r, u in zip(ref, union) if r and not u),
        unique_to_others=sum(1 for r, u in zip(ref, union) if u and not r),
    )
