"""Run configuration: thresholds, batch sizes, per-stage model ids, limits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Union

import yaml

from themescope.errors import ArgumentError

STAGES = (
    "recommend",
    "score",
    "extract",
    "filter",
    "classify",
    "generate",
    "merge",
    "map",
    "suggest",
    "match",
)


@dataclass
class PipelineConfig:
    batch_size: int = 500
    recommend_chunk_size: int = 200
    max_retries: int = 2
    concurrency: int = 4
    pop_threshold: int = 3
    content_threshold: int = 4
    top_fraction: float = 0.2
    quotes_per_theme: int = 1
    share_floor: str = "1/100"  # themes below this share of their group are report tail
    cache_dir: str = ".themescope-cache"
    model_ids: dict[str, str] = field(default_factory=dict)

    def model_id(self, stage: str) -> str:
        return self.model_ids.get(stage, self.model_ids.get("default", "default"))

    @property
    def share_floor_fraction(self) -> Fraction:
        return Fraction(self.share_floor)

    @classmethod
    def from_mapping(cls, data: Mapping) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ArgumentError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def load_config(path: Union[str, Path]) -> PipelineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    return PipelineConfig.from_mapping(data)
