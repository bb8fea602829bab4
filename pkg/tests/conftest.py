import numpy as np
import pytest

from dataset import Dataset


@pytest.fixture
def tiny_dataset() -> Dataset:
    """Four K=1 samples whose two strata have means 1.5 and 3.5."""
    return Dataset(np.array([1.0, 2.0, 3.0, 4.0]), np.array([0.1, 0.2, 0.3, 0.4]))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


def random_dataset(rng: np.random.Generator, m: int, j_dim: int, k_dim: int) -> Dataset:
    n = m ** (2 * k_dim)
    y = rng.normal(size=(n, k_dim))
    x = y @ rng.normal(size=(k_dim, j_dim)) + rng.normal(size=(n, j_dim))
    return Dataset(x, y)
