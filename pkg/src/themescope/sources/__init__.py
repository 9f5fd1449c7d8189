from themescope.sources.models import CalibrationSample, RelevanceLabel, SubredditRecord
from themescope.sources.prefilter import is_english, prefilter
from themescope.sources.scoring import binarize, score_source
from themescope.sources.agreement import cohen_kappa
from themescope.sources.calibrate import CalibrationReport, calibration_report, calibration_sample

__all__ = [
    "CalibrationSample",
    "RelevanceLabel",
    "SubredditRecord",
    "is_english",
    "prefilter",
    "binarize",
    "score_source",
    "cohen_kappa",
    "CalibrationReport",
    "calibration_report",
    "calibration_sample",
]
