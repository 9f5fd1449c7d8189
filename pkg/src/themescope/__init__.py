"""themescope: prevalence-ranked thematic reports from large text corpora.

Ingests forum archives and interview transcripts, extracts verbatim quotes
with mechanical provenance checks, clusters them into themes with an LLM in
the loop, and renders ranked, quote-backed reports.
"""

__version__ = "0.1.0"

# Embedded in every report so two documents are comparable; bump on any
# change that affects pipeline output.
PIPELINE_VERSION = "0.1.0"
