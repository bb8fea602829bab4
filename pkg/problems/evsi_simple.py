"""
Gaussian EVSI testcase: (theta, Y1, Y2, Y3) jointly normal, zero mean, unit
variances, all correlations 1/2; two treatments with NB_1 = theta and
NB_2 = -theta.

Given Y, theta is normal with mean (Y1+Y2+Y3)/4 and variance 5/8 (Schur
complement). The posterior mean has variance 3/8, so EVSI = E|mu(Y)| =
sqrt(3/(4 pi)), and the prior term max_d E NB_d is 0.
"""
import math

import numpy as np

from estimators.outer import OuterFunction
from problems.base import NestedProblem

COVARIANCE = np.full((4, 4), 0.5) + 0.5 * np.eye(4)
POSTERIOR_WEIGHT = 0.25
POSTERIOR_VARIANCE = 5.0 / 8.0


def net_benefits(theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=np.float64)
    return np.stack([theta, -theta], axis=-1)


class EvsiSimple(NestedProblem):
    name = "evsi-simple"
    j_dim = 2
    k_dim = 3
    f = OuterFunction.max_coordinate()
    has_conditional = True
    is_evsi = True
    reference = math.sqrt(3.0 / (4.0 * math.pi))
    reference_note = "analytic"
    baseline_term = 0.0

    def draw_joint(self, n, rng):
        z = rng.multivariate_normal(np.zeros(4), COVARIANCE, size=n, method="cholesky")
        return net_benefits(z[:, 0]), z[:, 1:]

    def draw_outer(self, n, rng):
        return rng.multivariate_normal(np.zeros(3), COVARIANCE[1:, 1:], size=n, method="cholesky")

    def draw_conditional(self, y, n, rng):
        y = np.asarray(y, dtype=np.float64).reshape(-1, 3)
        mean = POSTERIOR_WEIGHT * y.sum(axis=1, keepdims=True)
        theta = mean + math.sqrt(POSTERIOR_VARIANCE) * rng.standard_normal((y.shape[0], n))
        return net_benefits(theta)
