"""Deterministic mock LLM port for offline tests and demos.

Responses come either from per-template scripted queues (faults included)
or from pure handlers that derive the reply from the prompt text alone, so
concurrent pipelines replay byte-identically.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from collections import defaultdict, deque
from typing import Callable, Optional

from themescope.llm.port import PortReply


def stable_int(text: str) -> int:
    """Platform-stable 64-bit hash; NEVER use builtin hash() for replayable scripts."""
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


class ScriptedPort:
    """LlmPort backed by scripted responses and deterministic handlers.

    Queued responses (per template tag) are consumed first, which lets a
    test inject malformed output ahead of a valid one; handlers serve
    everything else. Unhandled tags raise so tests never silently pass on
    an unscripted call.
    """

    def __init__(self):
        self._queues: dict[str, deque[str]] = defaultdict(deque)
        self._handlers: dict[str, Callable[[str], str]] = {}
        self._lock = threading.Lock()
        self.calls: list[tuple[str, str]] = []

    def push(self, tag: str, *responses: str):
        self._queues[tag].extend(responses)

    def handle(self, tag: str, fn: Callable[[str], str]):
        self._handlers[tag] = fn

    def call_count(self, tag: Optional[str] = None) -> int:
        with self._lock:
            if tag is None:
                return len(self.calls)
            return sum(1 for t, _ in self.calls if t == tag)

    def complete(self, prompt: str, *, model_id: str, tag: str = "") -> PortReply:
        with self._lock:
            self.calls.append((tag, prompt))
            queue = self._queues.get(tag)
            if queue:
                text = queue.popleft()
            elif tag in self._handlers:
                handler = self._handlers[tag]
                text = None
            else:
                raise AssertionError(f"no scripted response or handler for tag {tag!r}")
        if text is None:
            text = handler(prompt)
        return PortReply(
            text=text,
            prompt_tokens=len(prompt.split()),
            completion_tokens=len(text.split()),
        )


# ---------------------------------------------------------------------------
# prompt parsing helpers for handlers
# ---------------------------------------------------------------------------


def payload_json(prompt: str, marker: str):
    """Extract the JSON data block appended after `marker` in a rendered prompt."""
    idx = prompt.rindex(marker)
    return json.loads(prompt[idx + len(marker) :].strip().split("\n\nYour previous response")[0])


def parse_code_count(prompt: str) -> int:
    block = prompt[prompt.rindex("Codes:") :].split("\n\n", 1)[0]
    return sum(1 for line in block.splitlines() if re.match(r"^\d+\. ", line))


THEME_BUCKETS = 4


def _bucket_title(text: str) -> str:
    return f"Concern Cluster {stable_int(text) % THEME_BUCKETS}"


_GENERIC_DESCRIPTION = "Recurring pattern of experiences and opinions that participants raised repeatedly across the analyzed discussions."


def extraction_handler(fabricate_every: int = 0) -> Callable[[str], str]:
    """Copy comment spans verbatim as quotes; optionally fabricate a fraction.

    With fabricate_every=N, every quote whose stable hash hits the 1-in-N
    bucket gets a word swapped in, so it must fail provenance verification.
    Fabricated quote ids are recorded on the handler for exact-count oracles.
    """
    fabricated: list[str] = []
    lock = threading.Lock()

    def handler(prompt: str) -> str:
        data = payload_json(prompt, "Data:")
        entries = []
        eligible = [c for c in data["comments"] if len(c.split()) >= 6]
        for i, comment in enumerate(eligible[:2]):
            quote = comment
            key = f"{data['submission_id']}:{i}"
            if fabricate_every and stable_int("fab:" + key) % fabricate_every == 0:
                words = quote.split()
                words[len(words) // 2] = "zzfabricated"
                quote = " ".join(words)
                with lock:
                    fabricated.append(key)
            entries.append(
                {"quote": quote, "summary": " ".join(comment.split()[:7])}
            )
        if not entries:
            return "null"
        return json.dumps({"entries": entries}, ensure_ascii=False)

    handler.fabricated = fabricated
    return handler


def interview_filter_handler(prompt: str) -> str:
    answer = prompt[prompt.rindex("Answer:") + len("Answer:") :].strip()
    keep = len(answer.split()) >= 5
    summary = " ".join(answer.split()[:6]) if keep else ""
    return json.dumps({"keep": keep, "summary": summary})


def theme_codes_handler(prompt: str) -> str:
    rows = payload_json(prompt, "Summaries:")
    titles = sorted({_bucket_title(r["quote"]) for r in rows})
    if "top 9 most prevalent" in prompt:
        extra = 1
        while len(titles) < 9:
            titles.append(f"Padding Theme {extra}")
            extra += 1
        titles = titles[:9]
    codes = [{"name": t, "description": _GENERIC_DESCRIPTION} for t in titles]
    return json.dumps({"codes": codes})


def merge_handler(prompt: str) -> str:
    blocks = payload_json(prompt, "Theme lists:")
    clusters: dict[str, list[int]] = {}
    for block in blocks:
        for item in block:
            clusters.setdefault(item["title"], []).append(item["index"])
    ordered = sorted(clusters.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    out = [
        {"theme_title": title, "theme_description": _GENERIC_DESCRIPTION, "sub_theme_ids": ids}
        for title, ids in ordered
    ]
    return json.dumps(out)


def categorization_handler(prompt: str) -> str:
    n = parse_code_count(prompt)
    rows = payload_json(prompt, "Quotes to categorize:")
    out = []
    for row in rows:
        code = (stable_int(row["quote"]) % n) + 1
        out.append(
            {
                "quote": row["quote"],
                "source_id": row["source_id"],
                "codes": [{"code": code, "code_name": f"code {code}"}],
            }
        )
    return json.dumps({"categorized_quotes": out}, ensure_ascii=False)


def suggestion_handler(prompt: str) -> str:
    m = re.search(r"subreddit (\S+),", prompt)
    name = m.group(1) if m else "source"
    themes = [
        {"title": f"{name} focus area {i}", "description": f"What members of {name} say about focus area {i}."}
        for i in range(1, 10)
    ]
    return json.dumps(themes)


def recommendation_handler(prompt: str) -> str:
    m = re.search(r"Here is a list of subreddits: (.*?)\. Based on the topic", prompt, re.S)
    names = [n.strip() for n in m.group(1).split(",") if n.strip()]
    picked = [n for n in names if stable_int("rec:" + n) % 3 == 0]
    return ", ".join(picked) if picked else "\n"


def match_handler(prompt: str) -> str:
    ref = re.search(r'Reference theme: "(.*?)":', prompt).group(1)
    block = prompt[prompt.rindex("Candidate generated themes:") :]
    titles = [
        line[2:].split(":", 1)[0].strip()
        for line in block.splitlines()
        if line.startswith("- ")
    ]
    match = ref if ref in titles else None
    note = "Same theme stated verbatim." if match else "No candidate covers this theme."
    return json.dumps({"match": match, "note": note})


def deterministic_port(fabricate_every: int = 0) -> ScriptedPort:
    """A port wired with pure handlers for every pipeline template."""
    port = ScriptedPort()
    extraction = extraction_handler(fabricate_every)
    port.handle("quote_extraction", extraction)
    port.fabricated_quote_ids = extraction.fabricated
    port.handle("interview_message_filter", interview_filter_handler)
    port.handle("theme_identification_fixed9", theme_codes_handler)
    port.handle("theme_identification_open", theme_codes_handler)
    port.handle("theme_merge", merge_handler)
    port.handle("quote_categorization", categorization_handler)
    port.handle("quote_categorization_open", categorization_handler)
    port.handle("high_level_theme_suggestion", suggestion_handler)
    port.handle("source_recommendation", recommendation_handler)
    port.handle("theme_match_suggestion", match_handler)
    return port
