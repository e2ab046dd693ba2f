import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose each phase's report on the item so fixtures (the acceptance
    # reporter) can see whether the test body passed
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def familiar_words():
    from layeval.readability import load_familiar_words

    return load_familiar_words()


# Worked 3-candidate pool used across selection/fewshot tests.
WORKED_POOL = [
    ("C1", {"fkgl": 10.0, "dcrs": 8.0, "cli": 12.0}, {"alignscore": 0.6, "summac": 0.5}),
    ("C2", {"fkgl": 12.0, "dcrs": 9.0, "cli": 14.0}, {"alignscore": 0.8, "summac": 0.7}),
    ("C3", {"fkgl": 14.0, "dcrs": 10.0, "cli": 13.0}, {"alignscore": 0.7, "summac": 0.6}),
]


def random_sentence(rng, words=None):
    vocab = ["cat", "dog", "house", "water", "green", "quickly", "jumps", "over",
             "small", "river", "light", "sound", "paper", "window", "garden"]
    n = words or rng.randint(3, 9)
    chosen = [rng.choice(vocab) for _ in range(n)]
    chosen[0] = chosen[0].capitalize()
    return " ".join(chosen)


def random_text(rng, sentences=None):
    n = sentences or rng.randint(1, 5)
    return ". ".join(random_sentence(rng) for _ in range(n)) + "."
