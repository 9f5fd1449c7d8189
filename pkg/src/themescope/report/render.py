"""Report persistence (one JSON record per line) and markdown rendering."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator, Optional, Union

from themescope.report.models import ReportDocument


def serialize(report: ReportDocument) -> str:
    """Canonical single-line JSON; equal documents serialize to equal bytes."""
    return json.dumps(report.to_record(), sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def parse_report(line: str) -> ReportDocument:
    return ReportDocument.from_record(json.loads(line))


class ReportStore:
    """Append-only report history, one serialized document per line per run."""

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, run_id: str) -> Path:
        return self.root / f"{run_id}.jsonl"

    def append(self, report: ReportDocument):
        with open(self._path(report.run_id), "a", encoding="utf-8") as fh:
            fh.write(serialize(report) + "\n")

    def history(self, run_id: str) -> Iterator[ReportDocument]:
        path = self._path(run_id)
        if not path.exists():
            return
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    yield parse_report(line)

    def latest(self, run_id: str) -> Optional[ReportDocument]:
        doc = None
        for doc in self.history(run_id):
            pass
        return doc

    def find(self, run_id: str, cache_key: str) -> Optional[ReportDocument]:
        for doc in self.history(run_id):
            if doc.cache_key == cache_key:
                return doc
        return None


def render_markdown(report: ReportDocument) -> str:
    """Human-readable document: groups, ranked theme tables, quotes with provenance ids."""
    lines = [
        f"# Thematic report: {report.topic}",
        "",
        f"- Run: `{report.run_id}`",
        f"- Source: {report.source}",
        f"- Generated: {report.generated_at}",
        f"- Pipeline version: {report.pipeline_version}",
        f"- Prompt versions: "
        + (
            ", ".join(f"{k}@{v}" for k, v in sorted(report.prompt_versions.items()))
            or "(none)"
        ),
        f"- Model ids: "
        + (", ".join(f"{k}={v}" for k, v in sorted(report.model_ids.items())) or "(none)"),
        "",
    ]
    for section in report.groups:
        lines.append(f"## {section.group_name} ({section.total_quotes} quotes)")
        lines.append("")
        if not section.themes:
            lines.append("_No themes were generated for this group._")
            lines.append("")
            continue
        lines.append("| Theme | Quotes | Share |")
        lines.append("| --- | ---: | ---: |")
        for entry in section.themes:
            lines.append(f"| {entry.title} | {entry.count} | {entry.percent()}% |")
        lines.append("")
        for entry in section.themes:
            lines.append(f"### {entry.title} ({entry.percent()}%)")
            lines.append("")
            lines.append(entry.description)
            lines.append("")
            for ref in entry.quotes:
                where = f"{ref.community}/{ref.source_id}" if ref.community else ref.source_id
                lines.append(f"> {ref.quote_text}")
                lines.append(">")
                lines.append(f"> {ref.summary} [{where}]")
                lines.append("")
    if report.notes:
        lines.append("## Notes")
        lines.append("")
        for note in report.notes:
            lines.append(f"- {note}")
        lines.append("")
    return "\n".join(lines)
