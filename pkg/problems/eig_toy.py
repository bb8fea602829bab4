"""
Toy expected-information-gain term: I = E_Y log E_theta k(Y - theta) with
k(u) = sqrt(2/pi) exp(-2u^2), Y ~ U(-1, 1) and theta ~ N(0, 1) independent.

Cast as a nested expectation with X = k(Y - theta) and f = log. Since
E_theta k(y - theta) = sqrt(2/(5 pi)) exp(-2y^2/5), the exact value is
log(2/(5 pi))/2 - 2/15.
"""
import math

import numpy as np

from estimators.outer import OuterFunction
from problems.base import NestedProblem

KERNEL_SCALE = math.sqrt(2.0 / math.pi)


def kernel(u: np.ndarray) -> np.ndarray:
    return KERNEL_SCALE * np.exp(-2.0 * np.square(u))


def inner_mean(y: np.ndarray) -> np.ndarray:
    """E[X | Y=y] in closed form."""
    return math.sqrt(2.0 / (5.0 * math.pi)) * np.exp(-2.0 * np.square(y) / 5.0)


class EigToy(NestedProblem):
    name = "eig-toy"
    j_dim = 1
    k_dim = 1
    f = OuterFunction.log()
    has_conditional = True
    reference = 0.5 * math.log(2.0 / (5.0 * math.pi)) - 2.0 / 15.0
    reference_note = "analytic"

    def draw_outer(self, n, rng):
        return rng.uniform(-1.0, 1.0, size=(n, 1))

    def draw_joint(self, n, rng):
        y = self.draw_outer(n, rng)
        theta = rng.standard_normal((n, 1))
        return kernel(y - theta), y

    def draw_conditional(self, y, n, rng):
        # theta is independent of Y
        y = np.asarray(y, dtype=np.float64).reshape(-1, 1)
        theta = rng.standard_normal((y.shape[0], n))
        return kernel(y - theta)[:, :, None]
