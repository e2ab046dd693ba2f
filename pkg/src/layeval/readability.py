"""Flesch-Kincaid Grade Level, Dale-Chall Readability Score, Coleman-Liau Index.

All three are computed from the counts produced by :mod:`layeval.textstats`,
so the indices stay mutually consistent by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import EmptyTextError, InvalidWordListError
from .textstats import TokenizedText, tokenize, total_syllables

# Regular inflection suffixes counted as familiar when the base word is.
_SUFFIXES = ("ing", "ed", "es", "s", "d")


@dataclass(frozen=True)
class ReadabilityScores:
    fkgl: float
    dcrs: float
    cli: float


class FamiliarWordList:
    """Set of words considered familiar for Dale-Chall scoring."""

    def __init__(self, entries):
        words = frozenset(w.strip().lower() for w in entries if w.strip())
        if not words:
            raise InvalidWordListError("familiar-word list is empty")
        self._words = words

    def __len__(self):
        return len(self._words)

    def __contains__(self, word):
        return word in self._words

    def is_familiar(self, token: str) -> bool:
        """True if the token or a regularly-inflected base form is listed.

        Tries stripping {s, es, ed, ing, d}, undoing consonant doubling
        ("running" -> "run") and restoring a dropped final e
        ("making" -> "make"). Tokens without letters (bare numbers) count
        as familiar.
        """
        word = token.lower()
        if not any(ch.isalpha() for ch in word):
            return True
        if word in self._words:
            return True
        for suffix in _SUFFIXES:
            if not word.endswith(suffix) or len(word) <= len(suffix):
                continue
            base = word[: -len(suffix)]
            candidates = [base]
            if len(base) >= 2 and base[-1] == base[-2]:
                candidates.append(base[:-1])
            if suffix in ("ing", "ed", "es"):
                candidates.append(base + "e")
            if any(c in self._words for c in candidates):
                return True
        return False


def load_familiar_words(path=None) -> FamiliarWordList:
    """Load a familiar-word list (one word per line, UTF-8).

    Without a path the bundled default list is used. The bundled list is a
    curated everyday-vocabulary approximation of the Dale-Chall list; pass a
    path to substitute the canonical list if you have it.
    """
    if path is None:
        text = resources.files("layeval.data").joinpath("familiar_words.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return FamiliarWordList(text.splitlines())


def _require_words(text: TokenizedText):
    if text.word_count < 1:
        raise EmptyTextError("text has no words")


def fkgl(text: TokenizedText) -> float:
    """Flesch-Kincaid Grade Level."""
    _require_words(text)
    words = text.word_count
    sentences = text.sentence_count
    syllables = total_syllables(text)
    return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59


def dcrs(text: TokenizedText, familiar: FamiliarWordList) -> float:
    """Dale-Chall Readability Score.

    PDW is the percentage of words not on the familiar list; the 3.6365
    adjustment applies only when PDW is strictly above 5.
    """
    _require_words(text)
    if not isinstance(familiar, FamiliarWordList):
        familiar = FamiliarWordList(familiar)
    words = text.word_count
    difficult = sum(1 for t in text.tokens if not familiar.is_familiar(t))
    pdw = 100.0 * difficult / words
    score = 0.1579 * pdw + 0.0496 * (words / text.sentence_count)
    if pdw > 5.0:
        score += 3.6365
    return score


def cli(text: TokenizedText) -> float:
    """Coleman-Liau Index from letters and sentences per 100 words."""
    _require_words(text)
    words = text.word_count
    letters_per_100 = 100.0 * text.letter_count / words
    sentences_per_100 = 100.0 * text.sentence_count / words
    return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8


def readability_all(text: str, familiar: FamiliarWordList) -> ReadabilityScores:
    """Tokenize once and compute all three indices on the same counts."""
    tokenized = tokenize(text)
    return ReadabilityScores(
        fkgl=fkgl(tokenized),
        dcrs=dcrs(tokenized, familiar),
        cli=cli(tokenized),
    )
