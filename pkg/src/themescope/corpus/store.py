"""Thread persistence: CSV export for humans, newline-delimited records for the pipeline."""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

from themescope.corpus.models import DiscussionThread, InterviewTranscript

# Comments are joined into one CSV cell with the ASCII unit separator, the
# one C0 control that str.splitlines does NOT treat as a line boundary.
# Occurrences inside a comment are backslash-escaped so the export
# round-trips losslessly.
COMMENT_SEP = "\x1f"
_CSV_FIELDS = ("submission_id", "subreddit", "title", "body", "created_at", "comments")
_UNESCAPE = re.compile(r"\\(\\|x1f)")


def _encode_comment(text: str) -> str:
    return text.replace("\\", "\\\\").replace(COMMENT_SEP, "\\x1f")


def _decode_comment(text: str) -> str:
    return _UNESCAPE.sub(lambda m: "\\" if m.group(1) == "\\" else COMMENT_SEP, text)


def join_comments(comments: Iterable[str]) -> str:
    # a leading separator marks "non-empty list", so a single empty comment
    # stays distinguishable from no comments at all
    encoded = [_encode_comment(c) for c in comments]
    if not encoded:
        return ""
    return COMMENT_SEP + COMMENT_SEP.join(encoded)


def split_comments(cell: str) -> tuple[str, ...]:
    if cell == "":
        return ()
    return tuple(_decode_comment(part) for part in cell[1:].split(COMMENT_SEP))


def export_threads_csv(threads: Iterable[DiscussionThread], dest: Union[str, Path, IO[str]]):
    """Write one RFC-4180 row per thread. An empty stream still writes the header."""
    close = False
    if isinstance(dest, (str, Path)):
        dest = open(dest, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(dest)
        writer.writerow(_CSV_FIELDS)
        for t in threads:
            writer.writerow(
                [
                    t.submission_id,
                    t.subreddit,
                    t.title,
                    t.body,
                    t.created_at.isoformat(),
                    join_comments(t.comments),
                ]
            )
    finally:
        if close:
            dest.close()


def import_threads_csv(src: Union[str, Path, IO[str]]) -> Iterator[DiscussionThread]:
    close = False
    if isinstance(src, (str, Path)):
        src = open(src, "r", encoding="utf-8", newline="")
        close = True
    try:
        reader = csv.DictReader(src)
        for row in reader:
            yield DiscussionThread.from_record(
                {
                    "submission_id": row["submission_id"],
                    "subreddit": row["subreddit"],
                    "title": row["title"],
                    "body": row["body"],
                    "created_at": row["created_at"],
                    "comments": split_comments(row["comments"]),
                }
            )
    finally:
        if close:
            src.close()


def write_thread_store(threads: Iterable[DiscussionThread], path: Union[str, Path]) -> int:
    """One thread per line; returns the number written."""
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for t in threads:
            fh.write(json.dumps(t.to_record(), ensure_ascii=False) + "\n")
            n += 1
    return n


def read_thread_store(path: Union[str, Path]) -> Iterator[DiscussionThread]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield DiscussionThread.from_record(json.loads(line))


def read_transcript_store(path: Union[str, Path]) -> Iterator[InterviewTranscript]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield InterviewTranscript.from_record(json.loads(line))


def write_transcript_store(transcripts: Iterable[InterviewTranscript], path: Union[str, Path]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for t in transcripts:
            fh.write(json.dumps(t.to_record(), ensure_ascii=False) + "\n")
            n += 1
    return n
