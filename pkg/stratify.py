"""
Post-stratification of joint samples by block sorting of the outer variable.

For N = m^(2K) samples, pass k (k = 1..K) cuts the current ordering into
m^(k-1) contiguous blocks of m^(2K-k+1) samples and sorts each block by the
k-th outer coordinate. After the last pass the ordering splits into sqrt(N)
strata of sqrt(N) samples each.

Sorts are stable, so samples with equal keys keep their previous relative
order. Ties only arise for discrete outer coordinates (e.g. a binomial
count); the result is then reproducible but depends on input row order.
"""
from dataclasses import dataclass

import numpy as np

from dataset import Dataset, JointSample, check_stratifiable


@dataclass(frozen=True)
class StratifiedIndex:
    perm: np.ndarray
    m: int
    k_dim: int

    @property
    def n_total(self) -> int:
        return self.perm.shape[0]

    @property
    def stratum_size(self) -> int:
        return self.m ** self.k_dim

    @property
    def n_strata(self) -> int:
        return self.stratum_size

    def strata(self) -> np.ndarray:
        """Sample indices as a (sqrt(N), sqrt(N)) array, one stratum per row."""
        return self.perm.reshape(self.n_strata, self.stratum_size)

    def stratum_indices(self, p: int) -> np.ndarray:
        if not 0 <= p < self.n_strata:
            raise IndexError(f"stratum {p} out of range [0, {self.n_strata})")
        s = self.stratum_size
        return self.perm[p * s:(p + 1) * s]


def stratify(dataset: Dataset, m: int) -> StratifiedIndex:
    check_stratifiable(dataset, m)
    k_dim = dataset.k_dim
    n_total = dataset.n_total
    perm = np.arange(n_total)
    for k in range(1, k_dim + 1):
        block = m ** (2 * k_dim - k + 1)
        blocks = perm.reshape(n_total // block, block)
        keys = dataset.y[blocks, k - 1]
        order = np.argsort(keys, axis=1, kind="stable")
        perm = np.take_along_axis(blocks, order, axis=1).ravel()
    perm.flags.writeable = False
    return StratifiedIndex(perm=perm, m=m, k_dim=k_dim)


def stratum(dataset: Dataset, idx: StratifiedIndex, p: int) -> list[JointSample]:
    """Samples of stratum p (0-based), in within-stratum order."""
    return [dataset[int(n)] for n in idx.stratum_indices(p)]
