"""
Medical decision EVSI model: three treatments, twelve uncertain inputs, and
a two-arm trial of n_p = 100 patients comparing treatments 1 and 3.

Log-normal and logit-normal parameters are given for the underlying normal
(mean vector, covariance). Normal parameters are (mean, variance).

The trial informs OR_E3, C_T3 and P_SE3 through
    Y1 ~ N(log OR_E3, 4/n_p), Y2 ~ N(C_T3, 1e4/n_p), Y3 ~ Binomial(n_p, P_SE3).
theta | Y has no closed form here, so the problem offers no conditional
sampler. The reference EVSI of 1031 is an external high-accuracy estimate,
not an analytic value.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from errors import DomainError
from estimators.outer import OuterFunction
from problems.base import NestedProblem

LAMBDA = 75_000.0
N_PATIENTS = 100

LIFETIME = (30.0, 25.0)
QALY_AFTER_EVENT_LOGIT = (0.6, 1.0 / 36.0)
QALY_SIDE_EFFECT = (0.7, 0.01)
COST_EVENT = (2e5, 1e8)
COST_SIDE_EFFECT = (1e5, 1e8)
COST_TREATMENT_MEAN = np.array([1.5e4, 2e4])
COST_TREATMENT_COV = np.array([[300.0, 100.0], [100.0, 500.0]])
P_EVENT_1_BETA = (15.0, 85.0)
LOG_ODDS_RATIO_MEAN = np.array([-1.5, -1.75])
LOG_ODDS_RATIO_COV = np.array([[0.11, 0.02], [0.02, 0.06]])
LOGIT_P_SIDE_EFFECT_MEAN = np.array([-1.4, -1.1])
LOGIT_P_SIDE_EFFECT_COV = np.array([[0.10, 0.05], [0.05, 0.25]])


@dataclass(frozen=True)
class MedicalTheta:
    """Model inputs for n draws; scalars are arrays of shape (n,), per-treatment
    quantities have shape (n, 3) with column d-1 for treatment d."""

    L: np.ndarray
    Q_E: np.ndarray
    Q_SE: np.ndarray
    C_E: np.ndarray
    C_SE: np.ndarray
    C_T: np.ndarray
    P_E: np.ndarray
    OR_E: np.ndarray
    P_SE: np.ndarray
    lam: float = LAMBDA


def derive_p_event(p1, or_d):
    """Event probability under a treatment with odds ratio or_d relative to p1."""
    p1 = np.asarray(p1, dtype=np.float64)
    or_d = np.asarray(or_d, dtype=np.float64)
    if np.any((p1 <= 0.0) | (p1 >= 1.0)):
        raise DomainError("baseline event probability must lie strictly between 0 and 1")
    if np.any(or_d <= 0.0):
        raise DomainError("odds ratio must be positive")
    odds = or_d * p1 / (1.0 - p1)
    result = odds / (1.0 + odds)
    return float(result) if result.ndim == 0 else result


def draw_theta(n: int, rng: np.random.Generator) -> MedicalTheta:
    L = rng.normal(LIFETIME[0], np.sqrt(LIFETIME[1]), size=n)
    Q_E = expit(rng.normal(QALY_AFTER_EVENT_LOGIT[0], np.sqrt(QALY_AFTER_EVENT_LOGIT[1]), size=n))
    Q_SE = rng.normal(QALY_SIDE_EFFECT[0], np.sqrt(QALY_SIDE_EFFECT[1]), size=n)
    C_E = rng.normal(COST_EVENT[0], np.sqrt(COST_EVENT[1]), size=n)
    C_SE = rng.normal(COST_SIDE_EFFECT[0], np.sqrt(COST_SIDE_EFFECT[1]), size=n)
    C_T23 = rng.multivariate_normal(COST_TREATMENT_MEAN, COST_TREATMENT_COV, size=n, method="cholesky")
    P_E1 = rng.beta(*P_EVENT_1_BETA, size=n)
    OR_E = np.exp(rng.multivariate_normal(LOG_ODDS_RATIO_MEAN, LOG_ODDS_RATIO_COV, size=n, method="cholesky"))
    P_SE23 = expit(rng.multivariate_normal(LOGIT_P_SIDE_EFFECT_MEAN, LOGIT_P_SIDE_EFFECT_COV, size=n, method="cholesky"))

    P_E = np.column_stack([P_E1, derive_p_event(P_E1, OR_E[:, 0]), derive_p_event(P_E1, OR_E[:, 1])])
    return MedicalTheta(
        L=L,
        Q_E=Q_E,
        Q_SE=Q_SE,
        C_E=C_E,
        C_SE=C_SE,
        C_T=np.column_stack([np.zeros(n), C_T23]),
        P_E=P_E,
        OR_E=OR_E,
        P_SE=np.column_stack([np.zeros(n), P_SE23]),
    )


def net_benefit(theta: MedicalTheta, d: int) -> np.ndarray:
    """Monetized net benefit of treatment d in {1, 2, 3}."""
    if d not in (1, 2, 3):
        raise ValueError(f"treatment must be 1, 2 or 3, got {d}")
    p_se = theta.P_SE[..., d - 1]
    p_e = theta.P_E[..., d - 1]
    lam, L = theta.lam, theta.L
    event_life = L * (1.0 + theta.Q_E) / 2.0
    return (
        p_se * p_e * (lam * (event_life - theta.Q_SE) - (theta.C_SE + theta.C_E))
        + p_se * (1.0 - p_e) * (lam * (L - theta.Q_SE) - theta.C_SE)
        + (1.0 - p_se) * p_e * (lam * event_life - theta.C_E)
        + (1.0 - p_se) * (1.0 - p_e) * lam * L
        - theta.C_T[..., d - 1]
    )


def trial_data(theta: MedicalTheta, rng: np.random.Generator, n_patients: int = N_PATIENTS) -> np.ndarray:
    n = theta.L.shape[0]
    y1 = rng.normal(np.log(theta.OR_E[:, 1]), np.sqrt(4.0 / n_patients), size=n)
    y2 = rng.normal(theta.C_T[:, 2], np.sqrt(1e4 / n_patients), size=n)
    y3 = rng.binomial(n_patients, theta.P_SE[:, 2]).astype(np.float64)
    return np.column_stack([y1, y2, y3])


class EvsiMedical(NestedProblem):
    name = "evsi-medical"
    j_dim = 3
    k_dim = 3
    f = OuterFunction.max_coordinate()
    has_conditional = False
    is_evsi = True
    reference = 1031.0
    reference_note = "external high-accuracy estimate"

    def draw_joint(self, n, rng):
        theta = draw_theta(n, rng)
        x = np.column_stack([net_benefit(theta, d) for d in (1, 2, 3)])
        return x, trial_data(theta, rng)
