"""
Nested Monte Carlo: N_p outer draws of Y, N_q conditional draws of X for
each, f of every inner average, averaged over the outer draws.
"""
from typing import TYPE_CHECKING

import numpy as np

from errors import CapabilityError, UsageError
from estimators.outer import OuterFunction
from estimators.post_strat import grand_mean
from estimators.result import EstimateResult, Method
from rng import make_rng

if TYPE_CHECKING:
    from problems.base import NestedProblem


def estimate_nmc(
    problem: "NestedProblem", n_outer: int, n_inner: int, seed, f: OuterFunction | None = None
) -> EstimateResult:
    """Nested Monte Carlo with N_p = n_outer, N_q = n_inner; f defaults to the problem's."""
    if not problem.has_conditional:
        raise CapabilityError(
            f"{problem.name} has no conditional sampler; nested Monte Carlo needs draws from rho(X|Y)"
        )
    if n_outer < 1 or n_inner < 1:
        raise UsageError(f"N_p and N_q must be >= 1, got {n_outer}, {n_inner}")

    rng = make_rng(seed)
    y = problem.draw_outer(n_outer, rng)
    x = problem.draw_conditional(y, n_inner, rng)  # (N_p, N_q, J)
    inner = np.ascontiguousarray(x.transpose(0, 2, 1)).sum(axis=-1) / n_inner
    values = (f or problem.f)(inner, stratum_size=None)
    return EstimateResult(
        value=float(values.sum() / n_outer),
        method=Method.NMC,
        n_total=n_outer * n_inner,
        m=None,
        n_outer=n_outer,
        n_inner=n_inner,
        x_mean=tuple(grand_mean(x.reshape(-1, problem.j_dim)).tolist()),
    )
