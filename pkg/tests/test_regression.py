from fractions import Fraction

import numpy as np
import pytest

from errors import RegressionError
from estimators import fit_stratum_regression
from estimators.regression import design_matrix, standardize
from problems import PROBLEMS, sample_joint
from stratify import stratify


def exact_normal_equations(y: np.ndarray, x: np.ndarray) -> list[float]:
    """Solve M^T M c = M^T v in exact rational arithmetic by Gaussian elimination."""
    mat = [[Fraction(1)] + [Fraction(v) for v in row] for row in y.tolist()]
    resp = [Fraction(v) for v in x.tolist()]
    size = len(mat[0])
    aug = [
        [sum(r[i] * r[j] for r in mat) for j in range(size)] + [sum(r[i] * v for r, v in zip(mat, resp))]
        for i in range(size)
    ]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col] / aug[col][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [float(aug[i][size] / aug[i][i]) for i in range(size)]


def test_exact_line():
    y = np.array([[0.0], [1.0], [2.5], [-4.0]])
    fit = fit_stratum_regression(y, 2.0 + 3.0 * y[:, 0])
    np.testing.assert_allclose(fit.coeffs, [2.0, 3.0], atol=1e-10)
    assert not fit.ridge_used


def test_duplicate_outer_values_fall_back_to_ridge():
    fit = fit_stratum_regression(np.array([[0.0], [0.0]]), np.array([1.0, 3.0]))
    assert fit.ridge_used
    assert fit.predict(np.array([[0.0]]))[0] == pytest.approx(2.0, abs=1e-6)


def test_constant_nonzero_outer_values_predict_the_mean(rng):
    y = np.full((9, 2), [1.5, -20.0])
    x = rng.normal(size=9)
    fit = fit_stratum_regression(y, x)
    assert fit.ridge_used
    np.testing.assert_allclose(fit.predict(y), x.mean(), rtol=1e-6)


@pytest.mark.parametrize("k_dim", [1, 2, 3])
def test_matches_exact_elimination(rng, k_dim):
    y = rng.normal(size=(30, k_dim))
    x = rng.normal(size=30) + y.sum(axis=1)
    fit = fit_stratum_regression(y, x)
    np.testing.assert_allclose(fit.coeffs, exact_normal_equations(y, x), rtol=1e-8, atol=1e-8)


def test_single_row():
    fit = fit_stratum_regression(np.array([[2.0]]), np.array([5.0]))
    assert fit.predict(np.array([[2.0]]))[0] == pytest.approx(5.0, rel=1e-6)


def test_non_finite_inputs():
    with pytest.raises(RegressionError):
        fit_stratum_regression(np.array([[0.0], [1.0]]), np.array([1.0, np.nan]))


def test_mixed_scale_columns_fit_without_ridge(rng):
    # a log odds ratio next to a cost in the tens of thousands
    y = np.column_stack([rng.normal(-1.75, 0.2, 27), rng.normal(2e4, 20.0, 27), rng.binomial(100, 0.25, 27)])
    x = rng.normal(5e6, 1e5, 27) + 3e5 * y[:, 0] + 40.0 * y[:, 1]
    fit = fit_stratum_regression(y, x)
    assert not fit.ridge_used
    lstsq = np.linalg.lstsq(design_matrix(y), x, rcond=None)[0]
    np.testing.assert_allclose(fit.predict(y), design_matrix(y) @ lstsq, rtol=1e-8, atol=1e-8 * np.abs(x).max())
    np.testing.assert_allclose(fit.coeffs[1:], lstsq[1:], rtol=1e-6, atol=1e-3)


def test_evsi_medical_strata_are_plain_least_squares():
    d = sample_joint(PROBLEMS["evsi-medical"], 3**6, seed=4)
    for rows in stratify(d, 3).strata():
        y_p = d.y[rows]
        for j in range(d.j_dim):
            x_p = d.x[rows, j]
            fit = fit_stratum_regression(y_p, x_p)
            assert not fit.ridge_used
            lstsq = np.linalg.lstsq(design_matrix(y_p), x_p, rcond=None)[0]
            np.testing.assert_allclose(
                fit.predict(y_p), design_matrix(y_p) @ lstsq, rtol=1e-8, atol=1e-8 * np.abs(x_p).max()
            )


def test_standardize_leaves_constant_columns_unscaled():
    z, center, scale = standardize(np.array([[1.0, 2.0], [1.0, 4.0]]))
    np.testing.assert_array_equal(center, [1.0, 3.0])
    np.testing.assert_array_equal(scale, [1.0, 1.0])
    np.testing.assert_array_equal(z, [[0.0, -1.0], [0.0, 1.0]])


def test_design_matrix_has_intercept():
    np.testing.assert_array_equal(design_matrix(np.array([[2.0, 3.0]])), [[1.0, 2.0, 3.0]])
