from themescope.report.models import GroupSection, QuoteRef, ReportDocument, ThemeEntry
from themescope.report.build import RunArtifacts, build_report, review_sample
from themescope.report.render import ReportStore, parse_report, render_markdown, serialize

__all__ = [
    "GroupSection",
    "QuoteRef",
    "ReportDocument",
    "ThemeEntry",
    "RunArtifacts",
    "build_report",
    "review_sample",
    "ReportStore",
    "parse_report",
    "render_markdown",
    "serialize",
]
