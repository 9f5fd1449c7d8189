"""Streaming assembly of discussion threads from archive dumps.

Dumps arrive as two newline-delimited record streams: submissions and
comments. To keep memory bounded by the largest single thread rather than
the corpus, both streams must be ordered by submission id, with each
submission's comments contiguous in the comments stream (the layout our
archive preparation step emits). Comments that reference a submission the
join has already passed, or one that never appears, are counted as orphans
and skipped.
"""

from __future__ import annotations

import bz2
import gzip
import io
import json
import logging
import lzma
from dataclasses import dataclass, field
from datetime import date, datetime, time, timezone
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Union

from themescope.corpus.models import DiscussionThread, parse_timestamp
from themescope.errors import ArgumentError

logger = logging.getLogger(__name__)

_MAGIC_ZSTD = b"\x28\xb5\x2f\xfd"
_MAGIC_GZIP = b"\x1f\x8b"
_MAGIC_XZ = b"\xfd7zXZ\x00"
_MAGIC_BZ2 = b"BZh"


def open_record_stream(path: Union[str, Path]) -> IO[str]:
    """Open a dump file as a text line stream, sniffing compression by magic bytes.

    Plain text, gzip, xz and bz2 are handled with the stdlib; zstd needs the
    optional `zstandard` package.
    """
    path = Path(path)
    with open(path, "rb") as probe:
        head = probe.read(6)
    if head.startswith(_MAGIC_ZSTD):
        try:
            import zstandard
        except ImportError as exc:
            raise ArgumentError(
                f"{path} is zstd-compressed; install the 'zstandard' package to read it"
            ) from exc
        fh = open(path, "rb")
        reader = zstandard.ZstdDecompressor(max_window_size=2**31).stream_reader(fh)
        return io.TextIOWrapper(reader, encoding="utf-8")
    if head.startswith(_MAGIC_GZIP):
        return gzip.open(path, "rt", encoding="utf-8")
    if head.startswith(_MAGIC_XZ):
        return lzma.open(path, "rt", encoding="utf-8")
    if head.startswith(_MAGIC_BZ2):
        return bz2.open(path, "rt", encoding="utf-8")
    return open(path, "r", encoding="utf-8")


@dataclass
class IngestStats:
    """Counters accumulated over one ingest pass. Never fatal, always reported."""

    records_processed: int = 0
    malformed_lines: int = 0
    threads_emitted: int = 0
    skipped_before_cutoff: int = 0
    orphan_comments: int = 0
    _extra: dict = field(default_factory=dict, repr=False)


def _strip_link_prefix(link_id: str) -> str:
    # archive comments carry "t3_<id>"; accept bare ids too
    return link_id[3:] if link_id.startswith("t3_") else link_id


def _parse_submission(line: str):
    rec = json.loads(line)
    return (
        str(rec["id"]),
        rec.get("subreddit", ""),
        rec.get("title", ""),
        rec.get("selftext", rec.get("body", "")) or "",
        parse_timestamp(rec["created_utc"] if "created_utc" in rec else rec["created_at"]),
    )


def _parse_comment(line: str):
    rec = json.loads(line)
    return _strip_link_prefix(str(rec["link_id"])), rec.get("body", "") or ""


def _iter_parsed(lines: Iterable[str], parse, stats: IngestStats) -> Iterator:
    for line in lines:
        if not line.strip():
            continue
        try:
            parsed = parse(line)
        except Exception:
            stats.malformed_lines += 1
            continue
        stats.records_processed += 1
        yield parsed


def _as_cutoff(cutoff) -> Optional[datetime]:
    if cutoff is None:
        return None
    if isinstance(cutoff, datetime):
        return cutoff if cutoff.tzinfo else cutoff.replace(tzinfo=timezone.utc)
    if isinstance(cutoff, date):
        return datetime.combine(cutoff, time.min, tzinfo=timezone.utc)
    return parse_timestamp(cutoff)


def ingest_forum_dump(
    submissions_source: Iterable[str],
    comments_source: Iterable[str],
    cutoff=None,
    stats: Optional[IngestStats] = None,
) -> Iterator[DiscussionThread]:
    """Merge-join submissions with their comments into DiscussionThreads.

    Yields one thread per submission, comments attached in stream order.
    Submissions created before `cutoff` are dropped. Malformed lines are
    skipped and counted in `stats.malformed_lines`; only an unreadable
    source is fatal. Pass an IngestStats to observe counters.
    """
    stats = stats if stats is not None else IngestStats()
    cutoff_dt = _as_cutoff(cutoff)

    comments = _iter_parsed(comments_source, _parse_comment, stats)
    pending = next(comments, None)

    for sid, subreddit, title, body, created in _iter_parsed(
        submissions_source, _parse_submission, stats
    ):
        attached: list[str] = []
        # skip comment groups for submissions the join already passed
        while pending is not None and pending[0] < sid:
            stats.orphan_comments += 1
            pending = next(comments, None)
        while pending is not None and pending[0] == sid:
            attached.append(pending[1])
            pending = next(comments, None)

        if cutoff_dt is not None and created < cutoff_dt:
            stats.skipped_before_cutoff += 1
            continue
        stats.threads_emitted += 1
        yield DiscussionThread(
            submission_id=sid,
            subreddit=subreddit,
            title=title,
            body=body,
            comments=tuple(attached),
            created_at=created,
        )

    while pending is not None:
        stats.orphan_comments += 1
        pending = next(comments, None)
    if stats.orphan_comments:
        logger.warning("ingest: %d comments had no matching submission", stats.orphan_comments)


def ingest_forum_dump_files(
    submissions_path: Union[str, Path],
    comments_path: Union[str, Path],
    cutoff=None,
    stats: Optional[IngestStats] = None,
) -> Iterator[DiscussionThread]:
    """File convenience wrapper around ingest_forum_dump."""
    with open_record_stream(submissions_path) as subs, open_record_stream(comments_path) as coms:
        yield from ingest_forum_dump(subs, coms, cutoff=cutoff, stats=stats)
