"""Human-vs-LLM agreement calibration on sampled sources."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from themescope.errors import ArgumentError
from themescope.sources.agreement import cohen_kappa
from themescope.sources.models import CalibrationSample, SubredditRecord
from themescope.sources.scoring import binarize

KAPPA_TARGET = 0.7


def calibration_sample(
    catalog: Sequence[SubredditRecord], n: int, seed: int
) -> CalibrationSample:
    """Draw n names uniformly without replacement, reproducible from the seed."""
    if n > len(catalog):
        raise ArgumentError(f"cannot sample {n} from a catalog of {len(catalog)}")
    names = [r.name for r in catalog]
    sampled = random.Random(seed).sample(names, n)
    return CalibrationSample(seed=seed, sampled_names=sampled)


@dataclass(frozen=True)
class CalibrationReport:
    kappa_population: float
    kappa_content: float
    kappa_binary: float
    target: float
    passed: bool

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"kappa(population)={self.kappa_population:.4f} "
            f"kappa(content)={self.kappa_content:.4f} "
            f"kappa(binary)={self.kappa_binary:.4f} "
            f"target>={self.target:.2f} [{verdict}]"
        )


def calibration_report(
    sample: CalibrationSample,
    pop_threshold: int = 3,
    content_threshold: int = 4,
    target: float = KAPPA_TARGET,
) -> CalibrationReport:
    """Per-dimension kappa on the raw 1-5 labels plus kappa on the binarized decision.

    The include/exclude decision is what the pipeline ultimately acts on, so
    the pass/fail gate applies to the binary kappa; the target comparison is
    inclusive.
    """
    sample.check_complete()
    names = sample.sampled_names
    human = [sample.human_labels[n] for n in names]
    llm = [sample.llm_labels[n] for n in names]

    k_pop = cohen_kappa(
        [l.population_relevance for l in human], [l.population_relevance for l in llm]
    )
    k_content = cohen_kappa(
        [l.content_relevance for l in human], [l.content_relevance for l in llm]
    )
    k_binary = cohen_kappa(
        [binarize(l, pop_threshold, content_threshold) for l in human],
        [binarize(l, pop_threshold, content_threshold) for l in llm],
    )
    return CalibrationReport(
        kappa_population=k_pop,
        kappa_content=k_content,
        kappa_binary=k_binary,
        target=target,
        passed=k_binary >= target,
    )
