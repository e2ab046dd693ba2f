"""Deterministic tokenization, sentence segmentation and syllable counting.

All readability metrics in this package consume the counts produced here, so
any change to the segmentation rules shifts every downstream score in lockstep.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import EmptyTextError, InvalidWordError

# Words are maximal runs of letters/digits with internal apostrophes or
# hyphens; everything else (punctuation, symbols) is excluded from tokens.
_WORD_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)

_TERMINAL_RE = re.compile(r"[.!?]")
_TERMINAL_WS_RE = re.compile(r"[.!?][\"'”’)\]]*\s")

_VOWELS = frozenset("aeiouy")


def _load_lines(name):
    text = resources.files("layeval.data").joinpath(name).read_text("utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


@lru_cache(maxsize=1)
def _abbreviations():
    """Abbreviation stop-list as lowercase token tuples, e.g. ('et', 'al')."""
    entries = set()
    for line in _load_lines("abbreviations.txt"):
        toks = tuple(t.lower() for t in _WORD_RE.findall(line))
        if toks:
            entries.add(toks)
    return entries


@lru_cache(maxsize=1)
def _syllable_exceptions():
    table = {}
    for line in _load_lines("syllable_exceptions.txt"):
        word, count = line.split()
        table[word.lower()] = int(count)
    return table


@dataclass(frozen=True)
class TokenizedText:
    """Tokens plus sentence structure of one text.

    ``sentences`` holds half-open [start, end) token-index ranges that are
    disjoint, contiguous and cover every token.
    """

    tokens: tuple
    sentences: tuple
    letter_count: int

    @property
    def tokens_lower(self):
        return tuple(t.lower() for t in self.tokens)

    @property
    def word_count(self):
        return len(self.tokens)

    @property
    def sentence_count(self):
        return len(self.sentences)


def tokenize(text: str) -> TokenizedText:
    """Split ``text`` into word tokens and sentences.

    Sentence boundaries sit at ``.``, ``!`` or ``?`` followed by whitespace and
    an uppercase-initial token (or end of text); a fixed abbreviation
    stop-list suppresses false splits after e.g. "Dr." or "et al.".
    Raises EmptyTextError on empty or whitespace-only input.
    """
    if not text or not text.strip():
        raise EmptyTextError("text is empty or whitespace-only")
    text = unicodedata.normalize("NFC", text)
    matches = list(_WORD_RE.finditer(text))
    if not matches:
        raise EmptyTextError("text contains no word tokens")

    tokens = tuple(m.group(0) for m in matches)
    lower = tuple(t.lower() for t in tokens)
    abbrevs = _abbreviations()

    boundaries = []
    for i in range(len(matches) - 1):
        gap = text[matches[i].end() : matches[i + 1].start()]
        if not _TERMINAL_RE.search(gap):
            continue
        if not _TERMINAL_WS_RE.search(gap):
            continue
        nxt = matches[i + 1].group(0)
        if not nxt[0].isupper():
            continue
        # Only '.' can belong to an abbreviation; '!'/'?' always split.
        if "." in gap and "!" not in gap and "?" not in gap:
            if any(len(a) <= i + 1 and lower[i + 1 - len(a) : i + 1] == a for a in abbrevs):
                continue
        boundaries.append(i + 1)

    sentences = []
    start = 0
    for b in boundaries:
        sentences.append((start, b))
        start = b
    sentences.append((start, len(tokens)))

    letters = sum(1 for tok in tokens for ch in tok if ch.isalpha())
    return TokenizedText(tokens=tokens, sentences=tuple(sentences), letter_count=letters)


def count_syllables(word: str) -> int:
    """Syllables in one word token, always >= 1.

    Vowel-group heuristic (a, e, i, o, u, y) with a trailing-silent-e rule and
    a shipped exception table; raises InvalidWordError for letterless input.
    """
    core = "".join(ch for ch in word.lower() if "a" <= ch <= "z")
    if not core:
        raise InvalidWordError(f"word has no letters: {word!r}")
    exceptions = _syllable_exceptions()
    if core in exceptions:
        return exceptions[core]
    groups = re.findall(r"[aeiouy]+", core)
    n = len(groups)
    if (
        n > 1
        and core.endswith("e")
        and core[-2] not in _VOWELS
        and not (core.endswith("le") and len(core) > 2 and core[-3] not in _VOWELS)
    ):
        n -= 1
    return max(n, 1)


def token_syllables(token: str) -> int:
    """Syllables for any token, including digit-only ones.

    Digit groups are approximated as one syllable per group, so "2024" and
    "3-4" contribute 1 and 2 respectively.
    """
    if any(ch.isalpha() for ch in token):
        return count_syllables(token)
    digit_groups = re.findall(r"\d+", token)
    return max(len(digit_groups), 1)


def total_syllables(text: TokenizedText) -> int:
    return sum(token_syllables(t) for t in text.tokens)
