"""Ranking of corpus examples for few-shot prompting.

Each example's target lay summary is scored with the three readability
indices (negated) and the configured factuality scorers against its source
text; every metric is min-max normalized across the whole corpus and examples
are ranked by the mean normalized score.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError
from .plugin import ScoreRequest, score_batch
from .readability import cli, dcrs, fkgl
from .selection import normalize_minmax
from .textstats import tokenize

FEWSHOT_K = {"elife": 2, "plos": 3}


@dataclass(frozen=True)
class RankedExample:
    document_id: str
    rank_score: float
    rank: int  # 1 = best


@dataclass(frozen=True)
class FewShotConfig:
    k: int
    dataset: str = ""

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParameterError("k must be >= 1")


def fewshot_presets() -> dict:
    return {name: FewShotConfig(k=k, dataset=name) for name, k in FEWSHOT_K.items()}


def rank_examples(
    corpus,
    scorers,
    familiar,
    *,
    grouped_mean: bool = False,
    degenerate_value: float = 0.5,
) -> list:
    """Rank (document_id, lay_summary, source_text) examples, best first.

    ``scorers`` is an iterable of factuality endpoints; pass an empty list to
    rank on readability alone. With ``grouped_mean`` the score is
    (readability mean + factuality mean) / 2 instead of the flat mean over
    all metrics. Ties break on document_id lexicographic order.
    """
    corpus = list(corpus)
    if not corpus:
        raise InvalidParameterError("corpus is empty")
    scorers = list(scorers)

    ids = [doc_id for doc_id, _, _ in corpus]
    if len(set(ids)) != len(ids):
        raise InvalidParameterError("duplicate document ids in corpus")

    # Raw metrics: readability of the lay summary, factuality of the lay
    # summary against its source text.
    readability_cols = {"fkgl": [], "dcrs": [], "cli": []}
    for _, lay_summary, _ in corpus:
        tokenized = tokenize(lay_summary)
        readability_cols["fkgl"].append(fkgl(tokenized))
        readability_cols["dcrs"].append(dcrs(tokenized, familiar))
        readability_cols["cli"].append(cli(tokenized))

    factuality_cols = {}
    for endpoint in scorers:
        requests = [
            ScoreRequest(request_id=doc_id, candidate=lay_summary, source=source)
            for doc_id, lay_summary, source in corpus
        ]
        responses = score_batch(endpoint, requests)
        failed = [r for r in responses if not r.ok]
        if failed:
            raise InvalidParameterError(
                f"scorer {endpoint.name} failed on {failed[0].request_id}: {failed[0].error}"
            )
        factuality_cols[endpoint.name] = [r.score for r in responses]

    return rank_from_metrics(
        ids,
        readability_cols,
        factuality_cols,
        grouped_mean=grouped_mean,
        degenerate_value=degenerate_value,
    )


def rank_from_metrics(
    ids,
    readability_cols,
    factuality_cols,
    *,
    grouped_mean: bool = False,
    degenerate_value: float = 0.5,
) -> list:
    """Rank examples from raw metric columns (one value per example).

    Readability columns hold raw grade-level values and are negated before
    min-max normalization across the whole corpus; factuality columns are
    normalized as-is.
    """
    if not ids:
        raise InvalidParameterError("no examples to rank")
    for name, col in list(readability_cols.items()) + list(factuality_cols.items()):
        if len(col) != len(ids):
            raise InvalidParameterError(f"metric column {name} has the wrong length")

    norm_r = {
        k: normalize_minmax([-v for v in col], degenerate_value)
        for k, col in readability_cols.items()
    }
    norm_f = {k: normalize_minmax(col, degenerate_value) for k, col in factuality_cols.items()}

    scores = []
    for i in range(len(ids)):
        r_vals = [col[i] for col in norm_r.values()]
        f_vals = [col[i] for col in norm_f.values()]
        if grouped_mean:
            r_mean = sum(r_vals) / len(r_vals) if r_vals else degenerate_value
            f_mean = sum(f_vals) / len(f_vals) if f_vals else degenerate_value
            score = (r_mean + f_mean) / 2.0
        else:
            all_vals = r_vals + f_vals
            score = sum(all_vals) / len(all_vals)
        scores.append(score)

    order = sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))
    return [
        RankedExample(document_id=ids[i], rank_score=scores[i], rank=rank)
        for rank, i in enumerate(order, start=1)
    ]


def top_k(ranked, config: FewShotConfig) -> list:
    """Document ids of ranks 1..k, in rank order."""
    ranked = sorted(ranked, key=lambda r: r.rank)
    if config.k > len(ranked):
        raise InvalidParameterError(
            f"k={config.k} exceeds ranking size {len(ranked)}"
        )
    return [r.document_id for r in ranked[: config.k]]
