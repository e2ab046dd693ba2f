import random

import pytest

from conftest import random_text
from layeval.errors import EmptyTextError, InvalidWordListError
from layeval.readability import (
    FamiliarWordList,
    cli,
    dcrs,
    fkgl,
    load_familiar_words,
    readability_all,
)
from layeval.textstats import TokenizedText, tokenize

MAT_TEXT = "The cat sat on the mat."


def test_fkgl_fixture():
    # 6 words, 1 sentence, 6 syllables
    assert fkgl(tokenize(MAT_TEXT)) == pytest.approx(-1.45, abs=1e-6)


def test_fkgl_formula_components():
    # 15 monosyllables, 1 sentence: words/sentences = 15, syllables/words = 1
    words = ["cat"] * 15
    text = " ".join(words).capitalize() + "."
    t = tokenize(text)
    assert fkgl(t) == pytest.approx(0.39 * 15 + 11.8 * 1 - 15.59, abs=1e-9)


def test_fkgl_single_word():
    assert fkgl(tokenize("a")) == pytest.approx(0.39 + 11.8 - 15.59, abs=1e-6)


def test_cli_fixture():
    assert cli(tokenize(MAT_TEXT)) == pytest.approx(-4.07, abs=0.01)


def test_cli_single_letter_word():
    assert cli(tokenize("a")) == pytest.approx(5.88 - 29.6 - 15.8, abs=1e-6)


def test_cli_depends_only_on_counts():
    a = TokenizedText(tokens=("abc", "de"), sentences=((0, 2),), letter_count=5)
    b = TokenizedText(tokens=("ab", "cde"), sentences=((0, 2),), letter_count=5)
    assert cli(a) == cli(b)


def test_dcrs_all_familiar():
    familiar = FamiliarWordList(["the", "cat", "sat", "dog", "ran", "on", "mat",
                                 "a", "big", "red"])
    text = "The cat sat on the mat and a big red dog ran."[:-1]
    # build exactly 10 familiar words, 1 sentence
    t = tokenize("The cat sat on the mat a big red dog.")
    assert t.word_count == 10
    assert dcrs(t, familiar) == pytest.approx(0.0496 * 10, abs=1e-9)


def test_dcrs_difficult_branch():
    familiar = FamiliarWordList(["the", "cat", "sat", "on", "mat", "a", "big", "red"])
    # 10 words, 2 difficult (zyzzyva, qwop), 1 sentence
    t = tokenize("The cat sat on the mat a zyzzyva qwop red.")
    assert t.word_count == 10
    expected = 0.1579 * 20 + 0.0496 * 10 + 3.6365
    assert dcrs(t, familiar) == pytest.approx(expected, abs=1e-9)


def test_dcrs_boundary_pdw_exactly_five():
    # 20 words, 1 difficult -> PDW = 5 exactly; 2 sentences -> w/s = 10
    familiar = FamiliarWordList(["cat"])
    words = ["cat"] * 19 + ["zyzzyva"]
    text = "Cat " + " ".join(words[1:10]) + ". Cat " + " ".join(words[11:]) + "."
    t = tokenize(text)
    assert t.word_count == 20
    assert t.sentence_count == 2
    assert dcrs(t, familiar) == pytest.approx(0.1579 * 5 + 0.0496 * 10, abs=1e-9)


def test_dcrs_inflection_stripping():
    familiar = FamiliarWordList(["run", "make", "cat"])
    t = tokenize("Running cats make makes made making runs.")
    # made is not derivable by the documented suffix rules ('made' - 'd' = 'ma')
    difficult = sum(
        1 for tok in t.tokens if not familiar.is_familiar(tok)
    )
    assert difficult == 1


def test_dcrs_numbers_are_familiar():
    familiar = FamiliarWordList(["the", "cat"])
    t = tokenize("The cat 123.")
    assert dcrs(t, familiar) == pytest.approx(0.0496 * 3, abs=1e-9)


def test_empty_word_list_rejected():
    with pytest.raises(InvalidWordListError):
        FamiliarWordList([])


def test_zero_words_rejected():
    with pytest.raises(EmptyTextError):
        readability_all("", load_familiar_words())


def test_default_word_list_loads():
    familiar = load_familiar_words()
    assert len(familiar) > 500
    assert "cat" in familiar


def test_readability_all_composition(familiar_words):
    scores = readability_all(MAT_TEXT, familiar_words)
    assert scores.fkgl == pytest.approx(-1.45, abs=1e-6)
    assert scores.cli == pytest.approx(-4.07, abs=0.01)
    assert scores.dcrs == pytest.approx(0.0496 * 6, abs=1e-9)
    assert scores == readability_all(MAT_TEXT, familiar_words)


def test_fkgl_increasing_in_syllables():
    simple = tokenize("Cat dog mat sun can pit run fog.")
    complex_ = tokenize("Beautiful animals wandering everywhere magnificent national botanical gardens.")
    # same words/sentence (8 words, 1 sentence); more syllables per word
    assert simple.word_count == complex_.word_count == 8
    assert fkgl(complex_) > fkgl(simple)


def test_duplication_invariance(familiar_words):
    rng = random.Random(42)
    for _ in range(25):
        text = random_text(rng)[:-1]  # drop trailing period
        doubled = text + ". " + text + "."
        single = text + "."
        s1 = readability_all(single, familiar_words)
        s2 = readability_all(doubled, familiar_words)
        assert s2.fkgl == pytest.approx(s1.fkgl, abs=1e-9)
        assert s2.dcrs == pytest.approx(s1.dcrs, abs=1e-9)
        assert s2.cli == pytest.approx(s1.cli, abs=1e-9)
