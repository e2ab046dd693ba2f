"""Adapter configuration: one scorer per process, declared ranges up front."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class ScorerSpec:
    """Static description of one supported metric."""

    name: str
    score_range: Tuple[float, float]
    needs_source: bool
    needs_reference: bool
    default_checkpoint: str
    backend: str  # loader name in backends.py


# SummaC ships as two distinct scorer names (zero-shot and convolutional)
# because published setups differ on which variant they use. LENS declares an
# unbounded-above positive range.
SCORER_SPECS = {
    "alignscore": ScorerSpec(
        name="alignscore",
        score_range=(0.0, 1.0),
        needs_source=True,
        needs_reference=False,
        default_checkpoint="AlignScore-base",
        backend="load_alignscore",
    ),
    "summac-zs": ScorerSpec(
        name="summac-zs",
        score_range=(0.0, 1.0),
        needs_source=True,
        needs_reference=False,
        default_checkpoint="vitc",
        backend="load_summac_zs",
    ),
    "summac-conv": ScorerSpec(
        name="summac-conv",
        score_range=(0.0, 1.0),
        needs_source=True,
        needs_reference=False,
        default_checkpoint="vitc",
        backend="load_summac_conv",
    ),
    "bertscore": ScorerSpec(
        name="bertscore",
        score_range=(0.0, 1.0),
        needs_source=False,
        needs_reference=True,
        default_checkpoint="roberta-large",
        backend="load_bertscore",
    ),
    # candidate = generated text, source = abstract, reference = target lay
    # summary; the metric uses all three
    "lens": ScorerSpec(
        name="lens",
        score_range=(0.0, math.inf),
        needs_source=True,
        needs_reference=True,
        default_checkpoint="davidheineman/lens",
        backend="load_lens",
    ),
}


@dataclass(frozen=True)
class AdapterConfig:
    scorer: str
    checkpoint: Optional[str] = None
    device: str = "cpu"
    batch_size: int = 8
    dry_run: bool = False
    score_range: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.scorer not in SCORER_SPECS:
            raise ValueError(
                f"unknown scorer {self.scorer!r}; expected one of {', '.join(sorted(SCORER_SPECS))}"
            )
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.score_range is not None:
            lo, hi = self.score_range
            if not lo < hi:
                raise ValueError("score_range must satisfy lo < hi")

    @property
    def spec(self) -> ScorerSpec:
        return SCORER_SPECS[self.scorer]

    @property
    def effective_range(self) -> Tuple[float, float]:
        return self.score_range or self.spec.score_range

    @property
    def effective_checkpoint(self) -> str:
        return self.checkpoint or self.spec.default_checkpoint
