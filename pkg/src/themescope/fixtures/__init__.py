from themescope.fixtures.corpus_gen import CorpusSpec, DumpCounts, generate_corpus, generate_transcripts
from themescope.fixtures.mock_llm import ScriptedPort, deterministic_port, stable_int
from themescope.fixtures.reference import (
    load_authoritative_themes,
    load_published_distribution,
    load_reference_fixtures,
    load_theme_mapping,
)

__all__ = [
    "CorpusSpec",
    "DumpCounts",
    "generate_corpus",
    "generate_transcripts",
    "ScriptedPort",
    "deterministic_port",
    "stable_int",
    "load_authoritative_themes",
    "load_published_distribution",
    "load_reference_fixtures",
    "load_theme_mapping",
]
