"""
Run an estimator on a named problem, and the EVSI decomposition

    EVSI = E_Y max_d E[NB_d | Y] - max_d E NB_d,

where both terms are taken from the same samples.
"""
from dataset import Dataset
from errors import UsageError
from estimators import (
    EstimateResult,
    Method,
    estimate_nmc,
    estimate_post_strat,
    estimate_post_strat_reg,
)
from problems.base import NestedProblem
from rng import make_rng


def sample_dataset(problem: NestedProblem, n: int, seed) -> Dataset:
    if n < 1:
        raise UsageError(f"sample size must be >= 1, got {n}")
    x, y = problem.draw_joint(n, make_rng(seed))
    return Dataset(x, y)


def estimate_nested(problem: NestedProblem, method: Method, m: int, seed) -> EstimateResult:
    """Nested term at total cost m^(2K), on freshly drawn samples.

    NMC uses N_p = N_q = m^K, the same budget as the stratified methods.
    """
    if m < 2:
        raise UsageError(f"m must be an integer >= 2, got {m}")
    match Method.parse(method):
        case Method.NMC:
            side = m ** problem.k_dim
            return estimate_nmc(problem, side, side, seed)
        case Method.POST_STRAT:
            return estimate_post_strat(sample_dataset(problem, m ** (2 * problem.k_dim), seed), problem.f, m)
        case Method.POST_STRAT_REG:
            return estimate_post_strat_reg(sample_dataset(problem, m ** (2 * problem.k_dim), seed), problem.f, m)


def evsi_from_result(result: EstimateResult) -> float:
    return result.value - max(result.x_mean)


def estimate_evsi(problem: NestedProblem, method: Method, m: int, seed) -> float:
    if not problem.is_evsi:
        raise UsageError(f"{problem.name} is not an EVSI problem")
    return evsi_from_result(estimate_nested(problem, method, m, seed))
