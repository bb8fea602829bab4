"""
Per-stratum least squares x_j ~ c_0 + c_1 y_1 + ... + c_K y_K via the
normal equations M^T M c = M^T v.

M is built from the outer columns centered on their stratum mean and
divided by their stratum RMS deviation (constant columns are centered
only). Fitted values are invariant under this reparametrization; the pivot
test then fires only on strata that are actually degenerate, not on ones
whose outer coordinates differ in scale by orders of magnitude.

The standardized system is factored by Cholesky. When a pivot falls below
1e-10 of the largest diagonal entry (or the factorization fails outright),
the solve is repeated with a ridge term lambda*I, lambda = 1e-8 * trace/(K+1).
For a constant-y stratum this degrades to the stratum mean of x.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from errors import RegressionError

PIVOT_TOLERANCE = 1e-10
RIDGE_SCALE = 1e-8


@dataclass(frozen=True)
class RegressionFit:
    """Coefficients c_0..c_K on the original scale of y.

    Predictions are evaluated around `center` (the stratum mean of y), where
    the fit takes the value `level`, to avoid cancellation between a large
    intercept and large slope terms.
    """

    coeffs: np.ndarray
    ridge_used: bool
    center: np.ndarray
    level: float

    def predict(self, y: np.ndarray) -> np.ndarray:
        y = np.atleast_2d(np.asarray(y, dtype=np.float64))
        return self.level + (y - self.center) @ self.coeffs[1:]


def design_matrix(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.ndim == 1:
        y = y[:, None]
    return np.hstack([np.ones((y.shape[0], 1)), y])


def standardize(y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Center every column of y and scale it to unit RMS; returns (z, center, scale)."""
    center = y.mean(axis=0)
    z = y - center
    scale = np.sqrt(np.mean(np.square(z), axis=0))
    scale = np.where(scale > 0.0, scale, 1.0)
    return z / scale, center, scale


def _cholesky_solve(gram: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """Solve gram @ c = rhs, or return None if a pivot is too small."""
    try:
        factor, lower = linalg.cho_factor(gram, lower=True, check_finite=False)
    except linalg.LinAlgError:
        return None
    pivots = np.diag(factor) ** 2
    if pivots.min() <= PIVOT_TOLERANCE * np.diag(gram).max():
        return None
    return linalg.cho_solve((factor, lower), rhs, check_finite=False)


def fit_stratum_regression(y: np.ndarray, x: np.ndarray) -> RegressionFit:
    """Fit one inner coordinate x (shape (n,)) on outer rows y (shape (n, K))."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim == 1:
        y = y[:, None]
    v = np.asarray(x, dtype=np.float64).reshape(-1)
    if y.shape[0] < 1 or y.shape[0] != v.shape[0]:
        raise RegressionError(f"need matching, non-empty rows; got {y.shape[0]} y rows and {v.shape[0]} responses")
    if not (np.isfinite(y).all() and np.isfinite(v).all()):
        raise RegressionError("regression inputs must be finite")

    z, center, scale = standardize(y)
    mat = design_matrix(z)
    gram = mat.T @ mat
    rhs = mat.T @ v
    ridge_used = False
    coeffs = _cholesky_solve(gram, rhs)
    if coeffs is None:
        # trace >= n from the intercept column
        ridge = RIDGE_SCALE * np.trace(gram) / mat.shape[1]
        coeffs = _cholesky_solve(gram + ridge * np.eye(mat.shape[1]), rhs)
        if coeffs is None or not np.isfinite(coeffs).all():
            raise RegressionError(f"normal equations singular even with ridge {ridge:.3g}")
        ridge_used = True

    slopes = coeffs[1:] / scale
    raw = np.concatenate([[coeffs[0] - center @ slopes], slopes])
    return RegressionFit(coeffs=raw, ridge_used=ridge_used, center=center, level=float(coeffs[0]))
