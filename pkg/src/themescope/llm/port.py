"""Provider-agnostic completion port plus the concurrency guard."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from themescope.errors import TransportError


@dataclass(frozen=True)
class PortReply:
    text: str
    prompt_tokens: int = 0
    completion_tokens: int = 0


@runtime_checkable
class LlmPort(Protocol):
    """Anything that can turn a prompt into text.

    Implementations must be safe for concurrent calls. ``tag`` names the
    pipeline stage (template id) for logging, budgets, and test scripting;
    providers are free to ignore it.
    """

    def complete(self, prompt: str, *, model_id: str, tag: str = "") -> PortReply: ...


class ConcurrencyLimitedPort:
    """Caps in-flight calls to the wrapped port with a semaphore."""

    def __init__(self, inner: LlmPort, limit: int):
        if limit < 1:
            raise ValueError("concurrency limit must be >= 1")
        self._inner = inner
        self._slots = threading.Semaphore(limit)
        self.limit = limit

    def complete(self, prompt: str, *, model_id: str, tag: str = "") -> PortReply:
        with self._slots:
            return self._inner.complete(prompt, model_id=model_id, tag=tag)


class OpenAiCompatPort:
    """Chat-completions client for any OpenAI-compatible endpoint.

    Credentials come from the environment (THEMESCOPE_LLM_API_KEY) or the
    constructor; never from pipeline artifacts.
    """

    def __init__(self, base_url: str, api_key: str = "", timeout: float = 120.0):
        self.base_url = base_url.rstrip("/")
        self._api_key = api_key
        self._timeout = timeout

    def complete(self, prompt: str, *, model_id: str, tag: str = "") -> PortReply:
        import httpx

        headers = {"Content-Type": "application/json"}
        if self._api_key:
            headers["Authorization"] = f"Bearer {self._api_key}"
        payload = {
            "model": model_id,
            "messages": [{"role": "user", "content": prompt}],
        }
        try:
            response = httpx.post(
                f"{self.base_url}/chat/completions",
                json=payload,
                headers=headers,
                timeout=self._timeout,
            )
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise TransportError(f"provider call failed ({tag or 'untagged'}): {exc}") from exc
        body = response.json()
        usage = body.get("usage", {})
        return PortReply(
            text=body["choices"][0]["message"]["content"],
            prompt_tokens=usage.get("prompt_tokens", 0),
            completion_tokens=usage.get("completion_tokens", 0),
        )


def port_from_env() -> OpenAiCompatPort:
    """Build a provider port from THEMESCOPE_LLM_BASE_URL / THEMESCOPE_LLM_API_KEY."""
    base_url = os.environ.get("THEMESCOPE_LLM_BASE_URL", "")
    if not base_url:
        raise TransportError(
            "THEMESCOPE_LLM_BASE_URL is not set; point it at an OpenAI-compatible endpoint"
        )
    return OpenAiCompatPort(base_url, api_key=os.environ.get("THEMESCOPE_LLM_API_KEY", ""))
