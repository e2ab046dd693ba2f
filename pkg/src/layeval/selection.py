"""Best-candidate selection from reference-free readability/factuality metrics.

Pipeline per candidate pool: negate readability raw values (lower grade level
is better), min-max normalize each metric across the pool, average within the
readability and factuality groups, combine the group means with configured
weights and pick the argmax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError, InvalidPoolError

READABILITY_METRICS = ("fkgl", "dcrs", "cli")
FACTUALITY_METRICS = ("alignscore", "summac")


@dataclass(frozen=True)
class MetricVector:
    """Raw metric values for one candidate, split into the two groups."""

    candidate_id: str
    readability: dict
    factuality: dict


@dataclass(frozen=True)
class SelectionConfig:
    w_readability: float
    w_factuality: float
    negate_readability: bool = True
    tie_break: str = "first"  # lowest input index among ties
    degenerate_norm_value: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.w_readability <= 1.0 and 0.0 <= self.w_factuality <= 1.0):
            raise InvalidParameterError("weights must lie in [0, 1]")
        if abs(self.w_readability + self.w_factuality - 1.0) > 1e-12:
            raise InvalidParameterError("weights must sum to 1")
        if not (0.0 <= self.degenerate_norm_value <= 1.0):
            raise InvalidParameterError("degenerate_norm_value must lie in [0, 1]")
        if self.tie_break != "first":
            raise InvalidParameterError(f"unknown tie_break rule: {self.tie_break}")


@dataclass(frozen=True)
class CandidateScore:
    candidate_id: str
    norm_readability: dict
    norm_factuality: dict
    readability_mean: float
    factuality_mean: float
    overall: float


@dataclass(frozen=True)
class SelectionResult:
    chosen_candidate_id: str
    per_candidate: tuple


def normalize_minmax(values, degenerate_value: float = 0.5):
    """Map values to [0, 1] via (v - min) / (max - min).

    A constant list maps every element to ``degenerate_value`` instead of
    dividing by zero.
    """
    values = list(values)
    if not values:
        raise InvalidParameterError("cannot normalize an empty list")
    if any(not math.isfinite(v) for v in values):
        raise InvalidParameterError("cannot normalize non-finite values")
    lo, hi = min(values), max(values)
    if hi == lo:
        return [degenerate_value] * len(values)
    span = hi - lo
    return [(v - lo) / span for v in values]


def _check_pool(candidates):
    if not candidates:
        raise InvalidParameterError("candidate pool is empty")
    r_keys = tuple(candidates[0].readability)
    f_keys = tuple(candidates[0].factuality)
    for c in candidates[1:]:
        if tuple(c.readability) != r_keys or tuple(c.factuality) != f_keys:
            raise InvalidPoolError(
                f"candidate {c.candidate_id} has a different metric set than "
                f"{candidates[0].candidate_id}"
            )
    for c in candidates:
        for group in (c.readability, c.factuality):
            for name, v in group.items():
                if not math.isfinite(v):
                    raise InvalidParameterError(
                        f"candidate {c.candidate_id}: metric {name} is not finite"
                    )
    return r_keys, f_keys


def _normalize_group(candidates, keys, group_attr, negate, degenerate):
    """Per-metric min-max normalization across the pool; returns one dict per candidate."""
    normalized = [dict() for _ in candidates]
    sign = -1.0 if negate else 1.0
    for name in keys:
        raw = [sign * getattr(c, group_attr)[name] for c in candidates]
        for out, v in zip(normalized, normalize_minmax(raw, degenerate)):
            out[name] = v
    return normalized


def select(candidates, config: SelectionConfig) -> SelectionResult:
    """Pick the best candidate in one pool.

    Raises InvalidPoolError when candidates carry different metric sets and
    InvalidParameterError on an empty pool. Ties on the overall score go to
    the earliest candidate in input order.
    """
    candidates = list(candidates)
    r_keys, f_keys = _check_pool(candidates)
    norm_r = _normalize_group(
        candidates, r_keys, "readability", config.negate_readability, config.degenerate_norm_value
    )
    norm_f = _normalize_group(
        candidates, f_keys, "factuality", False, config.degenerate_norm_value
    )

    scored = []
    for c, nr, nf in zip(candidates, norm_r, norm_f):
        r_mean = sum(nr.values()) / len(nr) if nr else config.degenerate_norm_value
        f_mean = sum(nf.values()) / len(nf) if nf else config.degenerate_norm_value
        overall = config.w_readability * r_mean + config.w_factuality * f_mean
        scored.append(
            CandidateScore(
                candidate_id=c.candidate_id,
                norm_readability=nr,
                norm_factuality=nf,
                readability_mean=r_mean,
                factuality_mean=f_mean,
                overall=overall,
            )
        )

    best = 0
    for i, s in enumerate(scored):
        if s.overall > scored[best].overall:
            best = i
    return SelectionResult(
        chosen_candidate_id=scored[best].candidate_id,
        per_candidate=tuple(scored),
    )


def selection_presets() -> dict:
    """Dataset-specific weight presets: eLife leans readability, PLOS factuality."""
    return {
        "elife": SelectionConfig(w_readability=0.675, w_factuality=0.325),
        "plos": SelectionConfig(w_readability=0.25, w_factuality=0.75),
    }
