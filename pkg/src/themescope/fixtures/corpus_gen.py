"""Seeded synthetic corpora: forum dumps and interview transcripts.

Everything here is a deterministic function of (spec, seed); identical
arguments produce identical bytes, which the end-to-end determinism tests
rely on.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from themescope.corpus.models import BOT, HUMAN, InterviewTranscript, Turn

_VOCABULARY = (
    "market jobs wages automation training policy benefits contract shift software "
    "tools hiring layoffs retraining income savings rent union pension overtime "
    "warehouse hospital classroom freelance platform gig app customers manager team "
    "future worry hope plan skills degree certificate interview resume economy "
    "taxes support program local remote industry factory robot assistant model data"
).split()

_OPENERS = (
    "honestly i think",
    "in my experience",
    "my coworker said",
    "around here the",
    "last year the",
    "people keep saying",
)


def _sentence(rng: random.Random) -> str:
    words = [rng.choice(_OPENERS)] + rng.sample(_VOCABULARY, rng.randint(5, 10))
    return " ".join(words) + "."


def _paragraph(rng: random.Random, sentences: int) -> str:
    return " ".join(_sentence(rng) for _ in range(sentences))


@dataclass(frozen=True)
class CorpusSpec:
    n_threads: int = 10_000
    n_subreddits: int = 12
    comments_min: int = 1
    comments_max: int = 5
    corrupt_lines: int = 0
    epoch_start: int = 1_672_531_200  # 2023-01-01T00:00:00Z
    epoch_end: int = 1_704_067_199  # 2023-12-31T23:59:59Z


@dataclass(frozen=True)
class DumpCounts:
    submissions_lines: int
    comments_lines: int
    corrupt_lines: int

    @property
    def total_lines(self) -> int:
        return self.submissions_lines + self.comments_lines


def generate_corpus(
    spec: CorpusSpec, seed: int, out_dir: Union[str, Path]
) -> tuple[Path, Path, DumpCounts]:
    """Write submissions.ndjson and comments.ndjson under out_dir.

    Submission ids are zero-padded so lexicographic order matches emission
    order, and each submission's comments are written contiguously: the
    layout the streaming merge-join ingester expects. Corrupt lines are
    spread over both files at seeded positions.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    subreddits = [f"synthsub{i:03d}" for i in range(spec.n_subreddits)]

    sub_lines: list[str] = []
    com_lines: list[str] = []
    for i in range(spec.n_threads):
        sid = f"s{i:08d}"
        created = rng.randint(spec.epoch_start, spec.epoch_end)
        sub_lines.append(
            json.dumps(
                {
                    "id": sid,
                    "subreddit": rng.choice(subreddits),
                    "title": _sentence(rng),
                    "selftext": _paragraph(rng, rng.randint(1, 2)),
                    "created_utc": created,
                },
                ensure_ascii=False,
            )
        )
        for _ in range(rng.randint(spec.comments_min, spec.comments_max)):
            com_lines.append(
                json.dumps(
                    {
                        "link_id": f"t3_{sid}",
                        "body": _paragraph(rng, rng.randint(1, 2)),
                        "created_utc": created + rng.randint(60, 86_400),
                    },
                    ensure_ascii=False,
                )
            )

    # corrupt lines are appended at seeded offsets; comment corruption cannot
    # break grouping because corrupt lines are skipped wholesale
    corrupted = 0
    for _ in range(spec.corrupt_lines):
        target = sub_lines if rng.random() < 0.5 else com_lines
        target.insert(rng.randrange(len(target) + 1), '{"broken": ' + "x" * rng.randint(1, 5))
        corrupted += 1

    submissions_path = out_dir / "submissions.ndjson"
    comments_path = out_dir / "comments.ndjson"
    submissions_path.write_text("\n".join(sub_lines) + "\n", encoding="utf-8")
    comments_path.write_text("\n".join(com_lines) + "\n", encoding="utf-8")
    return (
        submissions_path,
        comments_path,
        DumpCounts(
            submissions_lines=len(sub_lines),
            comments_lines=len(com_lines),
            corrupt_lines=corrupted,
        ),
    )


def generate_transcripts(n: int, seed: int) -> list[InterviewTranscript]:
    """Bot-led transcripts with occasional multi-message human answers."""
    rng = random.Random(seed)
    transcripts = []
    for i in range(n):
        turns: list[Turn] = []
        index = 0
        turns.append(Turn(speaker=BOT, text="Hello! Let's talk about your work and the economy.", index=index))
        index += 1
        for _ in range(rng.randint(2, 8)):
            turns.append(Turn(speaker=BOT, text=_sentence(rng) + "?", index=index))
            index += 1
            for _ in range(rng.randint(1, 3)):
                turns.append(Turn(speaker=HUMAN, text=_paragraph(rng, rng.randint(1, 2)), index=index))
                index += 1
        transcripts.append(
            InterviewTranscript(
                transcript_id=f"tr{i:05d}",
                turns=tuple(turns),
                demographics={"age": str(rng.randint(18, 84))},
            )
        )
    return transcripts
