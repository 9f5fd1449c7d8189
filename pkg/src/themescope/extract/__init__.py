from themescope.extract.models import Quote, ValidationSheet
from themescope.extract.normalize import normalize_for_match
from themescope.extract.provenance import verify_provenance
from themescope.extract.quotes import (
    ExtractionResult,
    extract_quotes,
    filter_interview_quotes,
)
from themescope.extract.validation import agreement_rate, build_validation_sheet

__all__ = [
    "Quote",
    "ValidationSheet",
    "normalize_for_match",
    "verify_provenance",
    "ExtractionResult",
    "extract_quotes",
    "filter_interview_quotes",
    "agreement_rate",
    "build_validation_sheet",
]
