import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import WORKED_POOL
from layeval.errors import InvalidParameterError, InvalidPoolError
from layeval.selection import (
    MetricVector,
    SelectionConfig,
    normalize_minmax,
    select,
    selection_presets,
)

from oracles import minmax_oracle, select_oracle


def worked_vectors():
    return [MetricVector(cid, dict(r), dict(f)) for cid, r, f in WORKED_POOL]


def test_normalize_basic():
    assert normalize_minmax([2, 4, 6]) == [0.0, 0.5, 1.0]


def test_normalize_degenerate():
    assert normalize_minmax([5, 5, 5], 0.5) == [0.5, 0.5, 0.5]


def test_normalize_negated_fkgl():
    assert normalize_minmax([-14, -12, -10]) == [0.0, 0.5, 1.0]


def test_normalize_rejects_empty_and_nonfinite():
    with pytest.raises(InvalidParameterError):
        normalize_minmax([])
    with pytest.raises(InvalidParameterError):
        normalize_minmax([1.0, float("nan")])


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=1, max_size=20))
def test_normalize_matches_oracle(values):
    assert normalize_minmax(values) == pytest.approx(minmax_oracle(values), abs=1e-12)


def test_worked_example_elife():
    result = select(worked_vectors(), selection_presets()["elife"])
    scores = {s.candidate_id: s.overall for s in result.per_candidate}
    assert scores["C1"] == pytest.approx(0.675, abs=1e-9)
    assert scores["C2"] == pytest.approx(0.550, abs=1e-9)
    assert scores["C3"] == pytest.approx(0.275, abs=1e-9)
    assert result.chosen_candidate_id == "C1"


def test_worked_example_plos():
    result = select(worked_vectors(), selection_presets()["plos"])
    scores = {s.candidate_id: s.overall for s in result.per_candidate}
    assert scores["C1"] == pytest.approx(0.250, abs=1e-9)
    assert scores["C2"] == pytest.approx(0.25 / 3 + 0.75, abs=1e-9)
    assert scores["C3"] == pytest.approx(0.25 / 6 + 0.375, abs=1e-9)
    assert result.chosen_candidate_id == "C2"


def test_worked_example_matches_oracle():
    for preset in selection_presets().values():
        result = select(worked_vectors(), preset)
        chosen, overalls = select_oracle(
            WORKED_POOL, preset.w_readability, preset.w_factuality
        )
        assert result.chosen_candidate_id == chosen
        got = [s.overall for s in result.per_candidate]
        assert got == pytest.approx(overalls, abs=1e-12)


def test_single_candidate_degenerate():
    only = [MetricVector("solo", {"fkgl": 9.0}, {"alignscore": 0.4})]
    result = select(only, SelectionConfig(0.675, 0.325))
    assert result.chosen_candidate_id == "solo"
    assert result.per_candidate[0].overall == pytest.approx(0.5)


def test_presets_exact():
    presets = selection_presets()
    assert presets["elife"].w_readability == 0.675
    assert presets["elife"].w_factuality == 0.325
    assert presets["plos"].w_readability == 0.25
    assert presets["plos"].w_factuality == 0.75
    for cfg in presets.values():
        assert cfg.w_readability + cfg.w_factuality == pytest.approx(1.0, abs=1e-12)
        assert cfg.negate_readability


def test_weights_must_sum_to_one():
    with pytest.raises(InvalidParameterError):
        SelectionConfig(0.6, 0.3)
    with pytest.raises(InvalidParameterError):
        SelectionConfig(1.2, -0.2)


def test_empty_pool():
    with pytest.raises(InvalidParameterError):
        select([], SelectionConfig(0.5, 0.5))


def test_heterogeneous_pool():
    pool = [
        MetricVector("a", {"fkgl": 1.0}, {"alignscore": 0.5}),
        MetricVector("b", {"fkgl": 1.0, "cli": 2.0}, {"alignscore": 0.5}),
    ]
    with pytest.raises(InvalidPoolError):
        select(pool, SelectionConfig(0.5, 0.5))


def random_pool(rng, n_cands=None):
    n = n_cands or rng.randint(3, 8)
    r_names = ["fkgl", "dcrs", "cli"]
    f_names = ["alignscore", "summac"]
    pool = []
    for i in range(n):
        pool.append(
            MetricVector(
                f"c{i}",
                {m: rng.uniform(0, 20) for m in r_names},
                {m: rng.uniform(0, 1) for m in f_names},
            )
        )
    return pool


def test_all_scores_in_unit_interval():
    rng = random.Random(11)
    cfg = SelectionConfig(0.675, 0.325)
    for _ in range(100):
        result = select(random_pool(rng), cfg)
        chosen = next(s for s in result.per_candidate if s.candidate_id == result.chosen_candidate_id)
        for s in result.per_candidate:
            assert 0.0 <= s.overall <= 1.0
            for v in list(s.norm_readability.values()) + list(s.norm_factuality.values()):
                assert 0.0 <= v <= 1.0
            assert chosen.overall >= s.overall


def test_affine_invariance():
    rng = random.Random(5)
    cfg = SelectionConfig(0.675, 0.325)
    for _ in range(200):
        pool = random_pool(rng)
        base = select(pool, cfg)
        a = {m: rng.uniform(0.1, 5.0) for m in ("fkgl", "dcrs", "cli", "alignscore", "summac")}
        b = {m: rng.uniform(-10, 10) for m in a}
        transformed = [
            MetricVector(
                c.candidate_id,
                {m: a[m] * v + b[m] for m, v in c.readability.items()},
                {m: a[m] * v + b[m] for m, v in c.factuality.items()},
            )
            for c in pool
        ]
        result = select(transformed, cfg)
        assert result.chosen_candidate_id == base.chosen_candidate_id
        for s1, s2 in zip(base.per_candidate, result.per_candidate):
            assert s2.overall == pytest.approx(s1.overall, abs=1e-9)


def test_boundary_weights():
    rng = random.Random(17)
    for _ in range(200):
        pool = random_pool(rng)
        r_only = select(pool, SelectionConfig(1.0, 0.0))
        f_only = select(pool, SelectionConfig(0.0, 1.0))
        r_best = max(r_only.per_candidate, key=lambda s: (s.readability_mean, -list(p.candidate_id for p in r_only.per_candidate).index(s.candidate_id)))
        f_best = max(f_only.per_candidate, key=lambda s: s.factuality_mean)
        assert r_only.per_candidate[[s.candidate_id for s in r_only.per_candidate].index(r_only.chosen_candidate_id)].readability_mean == pytest.approx(r_best.readability_mean)
        assert f_only.per_candidate[[s.candidate_id for s in f_only.per_candidate].index(f_only.chosen_candidate_id)].factuality_mean == pytest.approx(f_best.factuality_mean)


def test_permutation_changes_nothing_without_ties():
    rng = random.Random(23)
    cfg = SelectionConfig(0.25, 0.75)
    for _ in range(50):
        pool = random_pool(rng)
        base = select(pool, cfg)
        overalls = sorted(s.overall for s in base.per_candidate)
        if any(abs(x - y) < 1e-12 for x, y in zip(overalls, overalls[1:])):
            continue  # exact ties follow input order by design
        shuffled = pool[:]
        rng.shuffle(shuffled)
        assert select(shuffled, cfg).chosen_candidate_id == base.chosen_candidate_id


def test_tie_break_first_in_input_order():
    pool = [
        MetricVector("x", {"fkgl": 1.0}, {"alignscore": 0.5}),
        MetricVector("y", {"fkgl": 1.0}, {"alignscore": 0.5}),
    ]
    result = select(pool, SelectionConfig(0.5, 0.5))
    assert result.chosen_candidate_id == "x"
    result = select(list(reversed(pool)), SelectionConfig(0.5, 0.5))
    assert result.chosen_candidate_id == "y"


def test_dominated_candidate_never_wins():
    rng = random.Random(31)
    cfg = SelectionConfig(0.675, 0.325)
    for _ in range(100):
        pool = random_pool(rng, n_cands=4)
        # build a candidate strictly worse on every metric (higher grade
        # levels, lower factuality) so it is weakly dominated after
        # normalization
        worst = MetricVector(
            "dominated",
            {m: max(c.readability[m] for c in pool) + 1.0 for m in pool[0].readability},
            {m: min(c.factuality[m] for c in pool) - 0.1 for m in pool[0].factuality},
        )
        result = select(pool + [worst], cfg)
        assert result.chosen_candidate_id != "dominated"


def test_negation_equals_one_minus_raw_normalization():
    values = [3.0, 7.0, 5.0]
    negated = normalize_minmax([-v for v in values])
    raw = normalize_minmax(values)
    assert negated == pytest.approx([1 - v for v in raw], abs=1e-12)
