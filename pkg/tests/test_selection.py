import math

import numpy as np
import pytest

from risbeam.baselines import exhaustive_search
from risbeam.codebook import Codebook, generate_random_codebook
from risbeam.geometry import angle_threshold
from risbeam.selection import (
    ComplexityCount,
    DirectionDatabase,
    SelectionOutcome,
    search_best,
    select_pattern,
    select_pattern_lazy,
    selection_complexity,
    selection_overhead,
    try_match,
)

from conftest import make_link

DEG = math.pi / 180.0


def test_try_match_empty_database():
    db = DirectionDatabase(10)
    matched, candidates = try_match(db, 1.0, angle_threshold(10))
    assert matched is None
    assert list(candidates) == list(range(1, 11))


def test_try_match_first_stored_neighbor_wins():
    # stored 40 deg, arrival 41 deg, threshold pi/100 = 1.8 deg
    db = DirectionDatabase(100)
    db.store(1, 40.0 * DEG)
    matched, candidates = try_match(db, 41.0 * DEG, angle_threshold(100))
    assert matched == 1
    assert candidates.size == 0


def test_try_match_skips_non_matching_earlier_slot():
    db = DirectionDatabase(100)
    db.store(1, 40.0 * DEG)
    db.store(2, 12.5 * DEG)
    matched, candidates = try_match(db, 12.0 * DEG, angle_threshold(100))
    assert matched == 2
    assert list(candidates) == [1]


def test_try_match_returns_first_of_several():
    db = DirectionDatabase(5)
    thr = 0.1
    db.store(3, 1.00)
    db.store(4, 1.01)
    matched, _ = try_match(db, 1.005, thr)
    assert matched == 3


def test_try_match_validates_direction_range():
    db = DirectionDatabase(4)
    with pytest.raises(ValueError):
        try_match(db, -0.1, 0.1)
    with pytest.raises(ValueError):
        try_match(db, math.pi + 0.1, 0.1)


def test_search_best_single_candidate(rng):
    _, channels, bf = make_link(rng, m=4, n=4)
    cb = generate_random_codebook(4, 6, 1.0, rng)
    winner, powers = search_best(channels, bf, cb, np.array([3]))
    assert winner == 3
    assert powers.shape == (1,)


def test_search_best_matches_exhaustive_baseline(rng):
    for _ in range(100):
        _, channels, bf = make_link(rng, m=8, n=8)
        cb = generate_random_codebook(8, 24, 1.0, rng)
        winner, powers = search_best(channels, bf, cb, np.arange(1, 25))
        baseline, _ = exhaustive_search(channels, bf, cb)
        assert winner == baseline
        assert powers.size == 24


def test_search_best_tie_goes_to_lowest_id(rng):
    _, channels, bf = make_link(rng, m=4, n=4)
    row = rng.uniform(0, 2 * math.pi, 4)
    cb = Codebook(np.vstack([row, row, rng.uniform(0, 2 * math.pi, 4)]))
    winner, powers = search_best(channels, bf, cb, np.array([1, 2]))
    assert powers[0] == powers[1]
    assert winner == 1


def test_search_best_rejects_empty_candidates(rng):
    _, channels, bf = make_link(rng, m=4, n=4)
    cb = generate_random_codebook(4, 4, 1.0, rng)
    with pytest.raises(ValueError):
        search_best(channels, bf, cb, np.array([], dtype=int))


def test_cold_start_searches_everything_and_writes_once(rng):
    _, channels, bf = make_link(rng, m=8, n=8)
    cb = generate_random_codebook(8, 12, 1.0, rng)
    db = DirectionDatabase(12)
    out = select_pattern(db, channels, bf, cb, 1.0, angle_threshold(12))
    assert not out.matched
    assert out.num_examined == 12
    assert out.candidate_powers.shape == (12,)
    assert db.filled_count == 1
    assert db.get(out.chosen_id) == 1.0


def test_match_leaves_database_unchanged(rng):
    _, channels, bf = make_link(rng, m=8, n=8)
    cb = generate_random_codebook(8, 12, 1.0, rng)
    db = DirectionDatabase(12)
    db.store(5, 1.0)
    before = db.angles_view().copy()
    out = select_pattern(db, channels, bf, cb, 1.0 + 0.5 * angle_threshold(12), angle_threshold(12))
    assert out.matched and out.chosen_id == 5
    assert out.num_examined == 4
    assert out.candidate_powers.size == 0
    assert np.array_equal(db.angles_view(), before, equal_nan=True)


def test_replay_same_direction_matches_first_winner(rng):
    _, channels, bf = make_link(rng, m=8, n=8)
    cb = generate_random_codebook(8, 16, 1.0, rng)
    db = DirectionDatabase(16)
    thr = angle_threshold(16)
    first = select_pattern(db, channels, bf, cb, 2.0, thr)
    second = select_pattern(db, channels, bf, cb, 2.0, thr)
    assert not first.matched
    assert second.matched
    assert second.chosen_id == first.chosen_id


def test_lazy_selection_skips_link_on_match(rng):
    _, channels, bf = make_link(rng, m=4, n=4)
    cb = generate_random_codebook(4, 8, 1.0, rng)
    db = DirectionDatabase(8)
    db.store(2, 0.7)

    def boom():
        raise AssertionError("link should not be realized on a match")

    out = select_pattern_lazy(db, cb, 0.7, angle_threshold(8), boom)
    assert out.matched and out.chosen_id == 2

    out2 = select_pattern_lazy(db, cb, 3.0, angle_threshold(8), lambda: (channels, bf))
    assert not out2.matched


def test_size_mismatch_raises(rng):
    _, channels, bf = make_link(rng, m=4, n=4)
    cb = generate_random_codebook(4, 8, 1.0, rng)
    with pytest.raises(ValueError):
        select_pattern(DirectionDatabase(9), channels, bf, cb, 1.0, 0.1)


def test_selection_overhead_values():
    matched = SelectionOutcome(chosen_id=3, matched=True, num_examined=2,
                               candidate_ids=np.array([1, 2]), candidate_powers=np.empty(0))
    assert selection_overhead(matched) == 1
    searched = SelectionOutcome(chosen_id=9, matched=False, num_examined=37,
                                candidate_ids=np.arange(1, 38),
                                candidate_powers=np.ones(37))
    assert selection_overhead(searched) == 37
    cold = SelectionOutcome(chosen_id=1, matched=False, num_examined=100,
                            candidate_ids=np.arange(1, 101), candidate_powers=np.ones(100))
    assert selection_overhead(cold) == 100


def test_selection_complexity_matched():
    out = SelectionOutcome(chosen_id=1, matched=True, num_examined=0,
                           candidate_ids=np.empty(0, dtype=int), candidate_powers=np.empty(0))
    count = selection_complexity(out, num_elements=16, codebook_size=150)
    assert count == ComplexityCount(scan_ops=450, config_ops=16)
    assert count.total == 466


def test_selection_complexity_search():
    out = SelectionOutcome(chosen_id=1, matched=False, num_examined=150,
                           candidate_ids=np.arange(1, 151), candidate_powers=np.ones(150))
    count = selection_complexity(out, num_elements=16, codebook_size=150)
    assert count.config_ops == 2400


def test_selection_complexity_rejects_empty_search():
    out = SelectionOutcome(chosen_id=1, matched=False, num_examined=0,
                           candidate_ids=np.empty(0, dtype=int), candidate_powers=np.empty(0))
    with pytest.raises(ValueError):
        selection_complexity(out, num_elements=16, codebook_size=150)


def test_database_store_validates_range():
    db = DirectionDatabase(4)
    with pytest.raises(ValueError):
        db.store(1, -0.1)
    with pytest.raises(ValueError):
        db.store(1, math.pi + 1e-6)
    with pytest.raises(ValueError):
        db.store(5, 1.0)


def test_database_snapshot_round_trip(tmp_path):
    db = DirectionDatabase(5)
    db.store(1, 40.0 * DEG)
    db.store(2, 12.5 * DEG)
    db.store(5, 24.0 * DEG)
    path = tmp_path / "db.txt"
    db.save(path)
    text = path.read_text().splitlines()
    assert text[2] == "3 EMPTY"
    loaded = DirectionDatabase.load(path)
    assert np.array_equal(loaded.angles_view(), db.angles_view(), equal_nan=True)
