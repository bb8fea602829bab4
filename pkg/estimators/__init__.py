"""
Estimator package exports.
"""
from .outer import OuterFunction, OuterKind
from .result import EstimateResult, Method
from .regression import RegressionFit, fit_stratum_regression
from .post_strat import estimate_post_strat, estimate_post_strat_reg, estimate_plain_mc
from .nmc import estimate_nmc

__all__ = [
    'OuterFunction', 'OuterKind', 'EstimateResult', 'Method',
    'RegressionFit', 'fit_stratum_regression',
    'estimate_post_strat', 'estimate_post_strat_reg', 'estimate_plain_mc',
    'estimate_nmc',
]
