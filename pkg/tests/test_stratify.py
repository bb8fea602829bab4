import itertools

import numpy as np
import pytest

from conftest import random_dataset
from dataset import Dataset
from errors import SizeError
from stratify import stratify, stratum


def brute_force_perm(y: np.ndarray, m: int) -> list[int]:
    """Index arithmetic transcribed literally: in pass k the u-th block holds
    Y^((u-1) m^(2K-k+1) + v) for v = 1..m^(2K-k+1), all 1-based."""
    n_total, k_dim = y.shape
    order = list(range(n_total))
    for k in range(1, k_dim + 1):
        size = m ** (2 * k_dim - k + 1)
        new_order = list(order)
        for u in range(1, m ** (k - 1) + 1):
            block = [order[(u - 1) * size + v - 1] for v in range(1, size + 1)]
            block = sorted(block, key=lambda n: y[n, k - 1])
            for v in range(1, size + 1):
                new_order[(u - 1) * size + v - 1] = block[v - 1]
        order = new_order
    return order


def test_single_pass_example():
    d = Dataset(np.zeros(4), np.array([3.0, 1.0, 4.0, 2.0]))
    idx = stratify(d, 2)
    assert idx.perm.tolist() == [1, 3, 0, 2]
    assert [s.y for s in stratum(d, idx, 0)] == [(1.0,), (2.0,)]
    assert [s.y for s in stratum(d, idx, 1)] == [(3.0,), (4.0,)]


@pytest.mark.parametrize("m", [2, 3, 5])
def test_k1_is_one_full_sort(rng, m):
    d = random_dataset(rng, m, 1, 1)
    idx = stratify(d, m)
    np.testing.assert_array_equal(idx.perm, np.argsort(d.y[:, 0], kind="stable"))


def test_k2_passes(rng):
    d = random_dataset(rng, 2, 1, 2)
    perm = stratify(d, 2).perm
    first = np.argsort(d.y[:, 0], kind="stable")
    expected = np.concatenate([
        first[:8][np.argsort(d.y[first[:8], 1], kind="stable")],
        first[8:][np.argsort(d.y[first[8:], 1], kind="stable")],
    ])
    np.testing.assert_array_equal(perm, expected)


@pytest.mark.parametrize("m,k_dim", list(itertools.product([2, 3], [1, 2, 3])))
def test_matches_brute_force_index_arithmetic(rng, m, k_dim):
    d = random_dataset(rng, m, 1, k_dim)
    assert stratify(d, m).perm.tolist() == brute_force_perm(d.y, m)


def test_brute_force_with_ties_keeps_prior_order(rng):
    y = rng.integers(0, 3, size=(81, 2)).astype(float)
    d = Dataset(np.zeros(81), y)
    assert stratify(d, 3).perm.tolist() == brute_force_perm(y, 3)


def test_partition_property(rng):
    d = random_dataset(rng, 3, 2, 2)
    idx = stratify(d, 3)
    assert sorted(idx.perm.tolist()) == list(range(d.n_total))
    sizes = [len(stratum(d, idx, p)) for p in range(idx.n_strata)]
    assert sizes == [9] * 9
    union = sorted(s for p in range(idx.n_strata) for s in stratum(d, idx, p))
    assert union == sorted(d.samples)


def test_monotone_transform_invariance(rng):
    d = random_dataset(rng, 3, 1, 2)
    transformed = d.y.copy()
    transformed[:, 1] = np.exp(3.0 * transformed[:, 1]) + 7.0
    transformed[:, 0] = np.arctan(transformed[:, 0])
    np.testing.assert_array_equal(stratify(d, 3).perm, stratify(Dataset(d.x, transformed), 3).perm)


def test_row_order_invariance_with_distinct_keys(rng):
    d = random_dataset(rng, 2, 2, 3)
    shuffled_rows = rng.permutation(d.n_total)
    shuffled = Dataset(d.x[shuffled_rows], d.y[shuffled_rows])
    a, b = stratify(d, 2), stratify(shuffled, 2)
    for p in range(a.n_strata):
        assert sorted(stratum(d, a, p)) == sorted(stratum(shuffled, b, p))


def test_stratum_out_of_range(tiny_dataset):
    idx = stratify(tiny_dataset, 2)
    with pytest.raises(IndexError):
        stratum(tiny_dataset, idx, 2)


def test_size_mismatch(tiny_dataset):
    with pytest.raises(SizeError):
        stratify(tiny_dataset, 3)


def test_dataset_not_mutated(rng):
    d = random_dataset(rng, 2, 1, 2)
    before = d.y.copy()
    stratify(d, 2)
    np.testing.assert_array_equal(d.y, before)
