"""Reference theme lists and the Y/N presence matrix they are compared through."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Sequence, Union

from themescope.errors import ArgumentError


@dataclass(frozen=True)
class ReferenceTheme:
    title: str
    description: str
    report_ids: tuple[int, ...] = ()


@dataclass
class ReferenceThemeList:
    """Hand-digitized themes from human-authored reports; titles unique."""

    source_name: str
    themes: list[ReferenceTheme] = field(default_factory=list)

    def __post_init__(self):
        titles = [t.title for t in self.themes]
        if len(set(titles)) != len(titles):
            dupes = sorted({t for t in titles if titles.count(t) > 1})
            raise ArgumentError(f"duplicate reference theme titles: {dupes}")

    def titles(self) -> list[str]:
        return [t.title for t in self.themes]


def read_reference_list(
    path: Union[str, Path], source_name: str = ""
) -> ReferenceThemeList:
    """One theme per line: title <TAB> description <TAB> comma-separated report ids."""
    path = Path(path)
    themes = []
    with open(path, "r", encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise ArgumentError(f"{path}:{n}: expected title<TAB>description[<TAB>ids]")
            ids: tuple[int, ...] = ()
            if len(parts) > 2 and parts[2].strip():
                ids = tuple(int(x) for x in parts[2].replace(" ", "").split(","))
            themes.append(ReferenceTheme(title=parts[0], description=parts[1], report_ids=ids))
    return ReferenceThemeList(source_name=source_name or path.stem, themes=themes)


@dataclass
class MappingMatrix:
    """Boolean presence of each theme per source column; rectangular, no empty rows."""

    rows: list[str]
    columns: list[str]
    cells: list[list[bool]]

    def __post_init__(self):
        if len(self.cells) != len(self.rows):
            raise ArgumentError("matrix must have one cell row per theme row")
        for i, row in enumerate(self.cells):
            if len(row) != len(self.columns):
                raise ArgumentError(f"row {self.rows[i]!r} has {len(row)} cells, expected {len(self.columns)}")
            if not any(row):
                raise ArgumentError(f"row {self.rows[i]!r} is all-false; every theme must appear somewhere")

    def column(self, label: str) -> list[bool]:
        try:
            j = self.columns.index(label)
        except ValueError:
            raise ArgumentError(f"unknown column: {label!r} (have {self.columns})") from None
        return [row[j] for row in self.cells]


def read_mapping_matrix_csv(src: Union[str, Path, IO[str]]) -> MappingMatrix:
    """CSV layout mirrors the published table: theme, then Y/N per source column."""
    close = False
    if isinstance(src, (str, Path)):
        src = open(src, "r", encoding="utf-8", newline="")
        close = True
    try:
        reader = csv.reader(src)
        header = next(reader)
        columns = header[1:]
        rows, cells = [], []
        for rec in reader:
            if not rec or not rec[0].strip():
                continue
            rows.append(rec[0])
            cells.append([c.strip().upper() == "Y" for c in rec[1:]])
        return MappingMatrix(rows=rows, columns=columns, cells=cells)
    finally:
        if close:
            src.close()


def write_mapping_matrix_csv(matrix: MappingMatrix, dest: Union[str, Path, IO[str]]):
    close = False
    if isinstance(dest, (str, Path)):
        dest = open(dest, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(dest)
        writer.writerow(["theme", *matrix.columns])
        for title, row in zip(matrix.rows, matrix.cells):
            writer.writerow([title, *["Y" if c else "N" for c in row]])
    finally:
        if close:
            dest.close()
