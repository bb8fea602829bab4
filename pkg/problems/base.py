from abc import ABC, abstractmethod

import numpy as np

from errors import CapabilityError
from estimators.outer import OuterFunction


class NestedProblem(ABC):
    """A benchmark model with a joint sampler for (X, Y).

    Problems that can also draw from rho(X|Y) set has_conditional and
    override draw_outer/draw_conditional.
    """

    name: str
    j_dim: int
    k_dim: int
    f: OuterFunction
    has_conditional: bool = False
    is_evsi: bool = False
    reference: float | None = None
    reference_note: str = ""
    # Analytic max_d E NB_d, when known.
    baseline_term: float | None = None

    @abstractmethod
    def draw_joint(self, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        """n joint draws as arrays x (n, J) and y (n, K)."""

    def draw_outer(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise CapabilityError(f"{self.name} has no conditional sampler")

    def draw_conditional(self, y: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
        """n draws of X given each row of y; shape (len(y), n, J)."""
        raise CapabilityError(f"{self.name} has no conditional sampler")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, J={self.j_dim}, K={self.k_dim})"
