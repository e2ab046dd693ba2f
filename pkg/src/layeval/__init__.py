"""Evaluation and best-candidate selection toolkit for lay summarization."""

__version__ = "0.1.0"

from .corpus import CandidateSummary, Document, load_candidates, load_corpus, save_results
from .errors import LayevalError
from .fewshot import FEWSHOT_K, FewShotConfig, RankedExample, rank_examples, top_k
from .plugin import (
    ScoreRequest,
    ScoreResponse,
    ScorerEndpoint,
    ScorerRegistry,
    mock_scorer,
    score_batch,
)
from .prompts import (
    ChatTurnFormat,
    PromptTemplate,
    assemble_fewshot,
    inference_presets,
    load_chat_formats,
    load_template,
    render,
)
# note: readability.cli (the Coleman-Liau function) is not re-exported here
# to avoid shadowing the layeval.cli module; use layeval.readability.cli.
from .readability import (
    FamiliarWordList,
    ReadabilityScores,
    dcrs,
    fkgl,
    load_familiar_words,
    readability_all,
)
from .rouge import RougeScores, rouge_l, rouge_n, rouge_tokenize, score_rouge
from .selection import (
    MetricVector,
    SelectionConfig,
    SelectionResult,
    normalize_minmax,
    select,
    selection_presets,
)
from .textstats import TokenizedText, count_syllables, tokenize
