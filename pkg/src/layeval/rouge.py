"""ROUGE-1/2/L between a candidate summary and a single reference."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import porter
from .errors import InvalidParameterError

_SPLIT_RE = re.compile(r"[^0-9a-z]+")


class Triple(NamedTuple):
    precision: float
    recall: float
    f1: float


_ZERO = Triple(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RougeScores:
    r1: Triple
    r2: Triple
    rl: Triple


def rouge_tokenize(text: str, stemming: bool = False) -> list:
    """Lowercase and split on non-alphanumeric characters.

    No stopword removal. ``stemming=True`` applies the Porter stemmer to
    each token, matching the configuration some ROUGE harnesses default to.
    """
    tokens = [t for t in _SPLIT_RE.split(text.lower()) if t]
    if stemming:
        tokens = [porter.stem(t) for t in tokens]
    return tokens


def _triple(overlap, cand_total, ref_total) -> Triple:
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    if precision + recall == 0.0:
        return Triple(precision, recall, 0.0)
    return Triple(precision, recall, 2 * precision * recall / (precision + recall))


def _ngrams(tokens: Sequence, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence, reference: Sequence, n: int) -> Triple:
    """N-gram multiset overlap precision/recall/F1."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    if cand_total == 0 or ref_total == 0:
        return _ZERO
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return _triple(overlap, cand_total, ref_total)


def _lcs_length(a: Sequence, b: Sequence) -> int:
    # One-row DP; O(len(a) * len(b)) time, O(len(b)) space.
    if not a or not b:
        return 0
    row = [0] * (len(b) + 1)
    for x in a:
        prev = 0
        for j, y in enumerate(b, start=1):
            cur = row[j]
            row[j] = prev + 1 if x == y else max(row[j], row[j - 1])
            prev = cur
    return row[-1]


def rouge_l(candidate: Sequence, reference: Sequence) -> Triple:
    """Longest-common-subsequence precision/recall/F1."""
    if not candidate or not reference:
        return _ZERO
    lcs = _lcs_length(candidate, reference)
    return _triple(lcs, len(candidate), len(reference))


def score_rouge(candidate_text: str, reference_text: str, stemming: bool = False) -> RougeScores:
    """Tokenize both texts once and compute ROUGE-1, ROUGE-2 and ROUGE-L."""
    cand = rouge_tokenize(candidate_text, stemming)
    ref = rouge_tokenize(reference_text, stemming)
    return RougeScores(
        r1=rouge_n(cand, ref, 1),
        r2=rouge_n(cand, ref, 2),
        rl=rouge_l(cand, ref),
    )
