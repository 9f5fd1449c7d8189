"""Exception types shared across the pipeline."""

from __future__ import annotations


class ThemescopeError(Exception):
    """Base class for all pipeline errors."""


class ArgumentError(ThemescopeError, ValueError):
    """Caller passed arguments that violate an operation's preconditions."""


class RenderError(ThemescopeError, KeyError):
    """A prompt template referenced a variable the caller did not supply."""

    def __init__(self, missing: str):
        super().__init__(missing)
        self.missing = missing

    def __str__(self) -> str:
        return f"missing template variable: {self.missing}"


class TransportError(ThemescopeError):
    """The LLM provider could not be reached or returned a transport-level failure."""


class StructuredOutputError(ThemescopeError):
    """Model output failed schema or semantic validation after all retries.

    Carries the last raw model text, the attempt count, and an optional
    machine-readable detail (e.g. a PartitionViolation).
    """

    def __init__(self, message: str, *, raw_text: str = "", attempts: int = 0, detail=None):
        super().__init__(message)
        self.raw_text = raw_text
        self.attempts = attempts
        self.detail = detail


class ScoringError(ThemescopeError):
    """Source relevance scoring produced output that never validated."""

    def __init__(self, message: str, *, raw_text: str = ""):
        super().__init__(message)
        self.raw_text = raw_text


class PartitionViolation(ThemescopeError):
    """A merge response did not form an exact partition of the input indices."""


class StageError(ThemescopeError):
    """A pipeline stage was invoked before its upstream stages completed."""

    def __init__(self, missing_stage: str):
        super().__init__(f"stage not complete: {missing_stage}")
        self.missing_stage = missing_stage


class FixtureError(ThemescopeError):
    """A shipped fixture is missing or fails its checksum."""
