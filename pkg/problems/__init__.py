"""
Benchmark problems, looked up by their CLI name.
"""
import numpy as np

from errors import UsageError
from rng import make_rng

from .base import NestedProblem
from .eig_toy import EigToy
from .evsi_simple import EvsiSimple
from .evsi_medical import EvsiMedical, MedicalTheta, derive_p_event, net_benefit
from .estimate import estimate_evsi, estimate_nested, evsi_from_result, sample_dataset

PROBLEMS: dict[str, NestedProblem] = {p.name: p for p in (EigToy(), EvsiSimple(), EvsiMedical())}


def get_problem(name: str) -> NestedProblem:
    try:
        return PROBLEMS[name]
    except KeyError:
        raise UsageError(f"unknown problem {name!r}; choose from {', '.join(PROBLEMS)}") from None


def sample_joint(problem: NestedProblem, n: int, seed):
    """n i.i.d. joint samples as a Dataset."""
    return sample_dataset(problem, n, seed)


def sample_conditional(problem: NestedProblem, y, n: int, seed) -> np.ndarray:
    """n draws of X given Y=y, shape (n, J)."""
    y = np.asarray(y, dtype=np.float64).reshape(1, -1)
    if y.shape[1] != problem.k_dim:
        raise UsageError(f"{problem.name} conditions on K={problem.k_dim} values, got {y.shape[1]}")
    if n < 1:
        raise UsageError(f"sample size must be >= 1, got {n}")
    return problem.draw_conditional(y, n, make_rng(seed))[0]


def reference_value(problem: NestedProblem) -> float:
    return problem.reference


__all__ = [
    'NestedProblem', 'EigToy', 'EvsiSimple', 'EvsiMedical', 'MedicalTheta',
    'PROBLEMS', 'get_problem', 'sample_joint', 'sample_conditional', 'reference_value',
    'net_benefit', 'derive_p_event',
    'estimate_nested', 'estimate_evsi', 'evsi_from_result', 'sample_dataset',
]
