from themescope.llm.templates import PromptTemplate, load_template, render
from themescope.llm.port import ConcurrencyLimitedPort, LlmPort, OpenAiCompatPort, PortReply, port_from_env
from themescope.llm.structured import CompletionRequest, StructuredResult, complete_structured
from themescope.llm.cache import DiskCache, cached_complete

__all__ = [
    "PromptTemplate",
    "load_template",
    "render",
    "ConcurrencyLimitedPort",
    "LlmPort",
    "OpenAiCompatPort",
    "PortReply",
    "port_from_env",
    "CompletionRequest",
    "StructuredResult",
    "complete_structured",
    "DiskCache",
    "cached_complete",
]
