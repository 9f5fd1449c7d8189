"""Versioned prompt templates with $-style placeholders.

Template bodies ship as text assets next to this module, one file per
(id, version), named ``<id>@<version>.txt``. The body of a given id and
version never changes; edits get a new version, which flows into cache
keys and report metadata so stale results are never reused.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Optional

from themescope.errors import ArgumentError, RenderError

_PROMPT_PACKAGE = "themescope.llm.prompts"


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    version: str
    text: str


def render(template: PromptTemplate, variables: Mapping[str, str]) -> str:
    """Substitute every placeholder; a missing variable raises RenderError naming it."""
    try:
        return string.Template(template.text).substitute(
            {k: str(v) for k, v in variables.items()}
        )
    except KeyError as exc:
        raise RenderError(exc.args[0]) from exc
    except ValueError as exc:
        raise ArgumentError(f"malformed placeholder in template {template.id}: {exc}") from exc


def _asset_names() -> list[str]:
    return [
        entry.name
        for entry in resources.files(_PROMPT_PACKAGE).iterdir()
        if entry.name.endswith(".txt")
    ]


def available_templates() -> dict[str, list[str]]:
    """Map template id to its shipped versions, ascending."""
    out: dict[str, list[str]] = {}
    for name in sorted(_asset_names()):
        stem = name[: -len(".txt")]
        tid, _, version = stem.rpartition("@")
        if tid:
            out.setdefault(tid, []).append(version)
    return out


def load_template(template_id: str, version: Optional[str] = None) -> PromptTemplate:
    """Load a shipped template; latest version when none is pinned."""
    versions = available_templates().get(template_id)
    if not versions:
        raise ArgumentError(f"unknown prompt template: {template_id}")
    if version is None:
        version = versions[-1]
    elif version not in versions:
        raise ArgumentError(f"template {template_id} has no version {version}")
    text = (
        resources.files(_PROMPT_PACKAGE)
        .joinpath(f"{template_id}@{version}.txt")
        .read_text(encoding="utf-8")
    )
    return PromptTemplate(id=template_id, version=version, text=text)
