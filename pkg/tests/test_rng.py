import numpy as np
import pytest

from hyperavg.rng import SplitMix64, draw_matrix, mix64, trial_seed, trial_seeds


def test_splitmix64_reference_sequence():
    g = SplitMix64(0)
    assert [g.next() for _ in range(4)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
        0xF88BB8A8724C81EC,
    ]


def test_trial_seed_is_kth_output_of_master_stream():
    g = SplitMix64(42)
    assert [g.next() for _ in range(5)] == [trial_seed(42, k) for k in range(5)]


def test_vectorised_seeds_match_scalar():
    seeds = trial_seeds(123456789, 10, 20)
    assert seeds.tolist() == [trial_seed(123456789, k) for k in range(10, 30)]


@pytest.mark.parametrize("m", [1, 2, 7, 1000, 2**32])
def test_draw_matrix_matches_scalar_generator(m):
    seeds = trial_seeds(9, 0, 6)
    mat = draw_matrix(seeds, 50, m)
    for row, s in zip(mat, seeds):
        g = SplitMix64(int(s))
        assert row.tolist() == [g.index(m) for _ in range(50)]
    assert mat.min() >= 0 and mat.max() < m


def test_draw_indices_are_roughly_uniform():
    counts = np.bincount(draw_matrix(trial_seeds(1, 0, 100), 1000, 5).ravel(), minlength=5)
    # 100k draws, expected 20k each, sd ~126
    assert np.all(np.abs(counts - 20_000) < 800)


def test_mix64_masks_input():
    assert mix64(2**64 + 5) == mix64(5)
