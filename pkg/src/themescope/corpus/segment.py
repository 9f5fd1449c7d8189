"""Segmentation of interview transcripts into question-answer pairs."""

from __future__ import annotations

import logging

from themescope.corpus.models import BOT, HUMAN, InterviewTranscript, QAPair

logger = logging.getLogger(__name__)


def segment_interview(transcript: InterviewTranscript) -> list[QAPair]:
    """Split a transcript into Q-A pairs anchored at bot turns.

    Each bot turn followed by at least one human turn yields one pair whose
    answer is every consecutive human turn up to the next bot turn. Bot
    turns answered by nothing (or by another bot turn) yield no pair. Human
    turns before the first bot turn have no anchoring question and are
    dropped with a log line; interviews open with the bot, so this only
    arises on malformed input.
    """
    pairs: list[QAPair] = []
    question: str | None = None
    fragments: list[str] = []
    leading_dropped = 0

    def flush():
        if question is not None and fragments:
            pairs.append(
                QAPair(
                    transcript_id=transcript.transcript_id,
                    pair_index=len(pairs),
                    question=question,
                    answer_fragments=tuple(fragments),
                )
            )

    for turn in transcript.turns:
        if turn.speaker == BOT:
            flush()
            question = turn.text
            fragments = []
        else:
            if question is None:
                leading_dropped += 1
                continue
            fragments.append(turn.text)
    flush()

    if leading_dropped:
        logger.warning(
            "transcript %s: dropped %d human turn(s) before the first bot turn",
            transcript.transcript_id,
            leading_dropped,
        )
    return pairs
