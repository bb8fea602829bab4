"""
Nested-expectation estimators that need only joint samples of (X, Y).

estimate_post_strat averages X within each stratum and applies f to the
stratum means. estimate_post_strat_reg replaces every X in a stratum by its
fitted value from a linear regression on Y inside that stratum and averages
f over all N fitted values.

Sums run along contiguous axes so numpy's pairwise summation applies; the
reduction order is fixed and does not depend on threading.
"""
import numpy as np

from dataset import Dataset
from estimators.outer import OuterFunction
from estimators.regression import fit_stratum_regression
from estimators.result import EstimateResult, Method
from stratify import stratify


def grand_mean(x: np.ndarray) -> np.ndarray:
    """Element-wise mean over rows of an (N, J) array."""
    return np.ascontiguousarray(x.T).sum(axis=1) / x.shape[0]


def _mean_last(values: np.ndarray) -> float:
    return float(np.ascontiguousarray(values).sum(axis=-1) / values.shape[-1])


def stratum_means(dataset: Dataset, m: int) -> np.ndarray:
    """Inner means of every stratum, shape (sqrt(N), J)."""
    idx = stratify(dataset, m)
    grouped = dataset.x[idx.strata()]  # (S, s, J)
    by_coord = np.ascontiguousarray(grouped.transpose(2, 0, 1))
    return (by_coord.sum(axis=-1) / idx.stratum_size).T


def estimate_post_strat(dataset: Dataset, f: OuterFunction, m: int) -> EstimateResult:
    f.check_dim(dataset.j_dim)
    means = stratum_means(dataset, m)
    values = f(means, stratum_size=1)
    s = means.shape[0]
    return EstimateResult(
        value=_mean_last(values),
        method=Method.POST_STRAT,
        n_total=dataset.n_total,
        m=m,
        n_outer=s,
        n_inner=s,
        x_mean=tuple(grand_mean(dataset.x).tolist()),
    )


def fitted_inner_values(dataset: Dataset, m: int) -> tuple[np.ndarray, int]:
    """Regression predictions for every sample in stratified order.

    Returns an (N, J) array whose rows p*s .. (p+1)*s-1 belong to stratum p,
    and the number of fits that needed the ridge fallback.
    """
    idx = stratify(dataset, m)
    strata = idx.strata()
    s = idx.stratum_size
    fitted = np.empty((dataset.n_total, dataset.j_dim))
    ridge_fits = 0
    for p, rows in enumerate(strata):
        y_p = dataset.y[rows]
        for j in range(dataset.j_dim):
            fit = fit_stratum_regression(y_p, dataset.x[rows, j])
            ridge_fits += fit.ridge_used
            fitted[p * s:(p + 1) * s, j] = fit.predict(y_p)
    return fitted, ridge_fits


def estimate_post_strat_reg(dataset: Dataset, f: OuterFunction, m: int) -> EstimateResult:
    f.check_dim(dataset.j_dim)
    fitted, ridge_fits = fitted_inner_values(dataset, m)
    s = m ** dataset.k_dim
    values = f(fitted, stratum_size=s)
    return EstimateResult(
        value=_mean_last(values),
        method=Method.POST_STRAT_REG,
        n_total=dataset.n_total,
        m=m,
        n_outer=s,
        n_inner=s,
        x_mean=tuple(grand_mean(dataset.x).tolist()),
        ridge_fits=ridge_fits,
    )


def estimate_plain_mc(dataset: Dataset, f: OuterFunction) -> float:
    """f of the grand mean of X; the non-nested term of EVSI."""
    f.check_dim(dataset.j_dim)
    return float(f(grand_mean(dataset.x)[None, :], stratum_size=None)[0])
