"""Schema-validated completions with bounded repair retries."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from themescope.errors import ArgumentError, StructuredOutputError
from themescope.llm.port import LlmPort
from themescope.llm.schemas import parse_and_validate
from themescope.llm.templates import PromptTemplate, render

_REPAIR_SUFFIX = (
    "\n\nYour previous response was invalid: {violation}\n"
    "Respond again, following the required output format exactly."
)


@dataclass(frozen=True)
class CompletionRequest:
    """One structured call: template + variables (+ optional data payload).

    The payload carries row data appended after the rendered instructions,
    keeping the shipped template bodies untouched. It participates in the
    cache key like everything else that shapes the response.
    """

    template: PromptTemplate
    variables: Mapping[str, str]
    model_id: str
    expected_schema: str
    max_retries: int = 2
    payload: str = ""

    def __post_init__(self):
        if self.max_retries < 0:
            raise ArgumentError("max_retries must be >= 0")

    def rendered_prompt(self) -> str:
        prompt = render(self.template, self.variables)
        if self.payload:
            prompt = f"{prompt}\n\n{self.payload}"
        return prompt

    def cache_key(self) -> str:
        material = json.dumps(
            {
                "template_id": self.template.id,
                "template_version": self.template.version,
                "variables": {k: str(v) for k, v in sorted(self.variables.items())},
                "payload": self.payload,
                "model_id": self.model_id,
                "schema": self.expected_schema,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()


@dataclass
class Usage:
    prompt_tokens: int = 0
    completion_tokens: int = 0
    calls: int = 0

    def add(self, other: "Usage"):
        self.prompt_tokens += other.prompt_tokens
        self.completion_tokens += other.completion_tokens
        self.calls += other.calls


@dataclass
class StructuredResult:
    value: object
    attempts: int
    usage: Usage = field(default_factory=Usage)
    cache_hit: bool = False


def complete_structured(
    req: CompletionRequest,
    port: LlmPort,
    check: Optional[Callable[[object], Optional[str]]] = None,
) -> StructuredResult:
    """Call the port and validate the response against the expected schema.

    On a parse, schema, or semantic-check failure the violation is appended
    to the prompt and the call retried, up to max_retries extra attempts.
    ``check`` receives the parsed value and returns a violation message or
    None; it covers contracts a schema cannot express (counts, partitions).
    """
    base_prompt = req.rendered_prompt()
    prompt = base_prompt
    usage = Usage()
    last_raw = ""
    last_violation: object = None

    for attempt in range(1, req.max_retries + 2):
        reply = port.complete(prompt, model_id=req.model_id, tag=req.template.id)
        usage.add(Usage(reply.prompt_tokens, reply.completion_tokens, 1))
        last_raw = reply.text
        try:
            value = parse_and_validate(req.expected_schema, reply.text)
        except ValueError as exc:
            last_violation = str(exc)
        else:
            violation = check(value) if check is not None else None
            if violation is None:
                return StructuredResult(value=value, attempts=attempt, usage=usage)
            last_violation = violation
        prompt = base_prompt + _REPAIR_SUFFIX.format(violation=last_violation)

    raise StructuredOutputError(
        f"output for template {req.template.id} never validated: {last_violation}",
        raw_text=last_raw,
        attempts=req.max_retries + 1,
        detail=last_violation,
    )
