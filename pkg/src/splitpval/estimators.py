"""Empirical-Bayes estimation of the signal prior and the shrinkage weights.

The training statistics ``y`` are modeled as a two-group mixture: a row is
null with probability ``1 - p`` and otherwise carries a Normal(theta, tau^2)
location drawn independently per row.  Method-of-moments estimators recover
``(p, theta, tau2)`` from the sample mean, sample variance, and the fraction
of training statistics falling inside a central band ``[-eps, eps]``.  The
fitted prior yields, for each row, a posterior weight ``h`` in [0, 1]
estimating whether the row's location is <= 0; the weight divides a test's
size between the lower and upper tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import std_normal_cdf

__all__ = [
    "P_HAT_FLOOR",
    "PriorEstimate",
    "ShrinkageWeights",
    "estimate_p",
    "estimate_theta_tau",
    "fit_prior",
    "fixed_prior",
    "oracle_weights",
    "shrinkage_weights",
]

# Strictly positive floor for the clamped mixing-proportion estimate; keeps
# theta_hat finite when the raw estimate is nonpositive.
P_HAT_FLOOR = 1e-6


@dataclass(frozen=True)
class PriorEstimate:
    """Fitted (or fixed) two-group prior on the per-row locations.

    ``epsilon`` is the band half-width used to estimate the mixing
    proportion; it is None when ``p`` was supplied rather than estimated, in
    which case ``p_raw`` is None as well.  ``p_raw`` preserves the unclamped
    estimate so nonpositive estimates remain observable to callers.
    """

    p_hat: float
    theta_hat: float
    tau2_hat: float
    lambda2: float
    epsilon: float | None = None
    p_raw: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.p_hat <= 1.0:
            raise ValueError(f"p_hat must lie in [0, 1], got {self.p_hat}")
        if self.tau2_hat < 0.0:
            raise ValueError(f"tau2_hat must be >= 0, got {self.tau2_hat}")

    @property
    def is_fixed_p(self) -> bool:
        return self.epsilon is None


@dataclass(frozen=True)
class ShrinkageWeights:
    """Per-row tail-splitting weights, each in [0, 1]."""

    h: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.h, dtype=float)
        if arr.size and (np.min(arr) < 0.0 or np.max(arr) > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "h", arr)


def estimate_p(y, epsilon: float, lam: float) -> tuple[float, float]:
    """Method-of-moments estimate of the mixing proportion p.

    The raw estimate is ``1 - mean(|y| <= eps) / (Phi(eps/lam) - Phi(-eps/lam))``
    where ``lam`` is the null standard deviation of the training statistics.
    Returns ``(clamped, raw)``: the raw value can be nonpositive when p and
    eps are small, so the usable estimate is clamped to [P_HAT_FLOOR, 1].
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if lam <= 0:
        raise ValueError(f"lam must be > 0, got {lam}")
    y = np.asarray(y, dtype=float)
    if y.size < 1:
        raise ValueError("need at least one training statistic")
    band = std_normal_cdf(epsilon / lam) - std_normal_cdf(-epsilon / lam)
    raw = float(1.0 - np.mean(np.abs(y) <= epsilon) / band)
    return min(max(raw, P_HAT_FLOOR), 1.0), raw


def estimate_theta_tau(y, p_hat: float, lambda2: float) -> tuple[float, float]:
    """Method-of-moments estimates of the signal location and spread.

    ``theta_hat = mean(y) / (lambda2 * p_hat)`` and ``tau2_hat`` solves the
    variance moment equation, clamped at 0 when the solution is negative.
    The sample variance uses the unbiased 1/(M-1) divisor.
    """
    if p_hat <= 0:
        raise ValueError("p_hat must be > 0 (degenerate prior)")
    y = np.asarray(y, dtype=float)
    if y.size < 2:
        raise ValueError("need at least two training statistics for a sample variance")
    ybar = float(np.mean(y))
    s2 = float(np.var(y, ddof=1))
    theta_hat = ybar / (lambda2 * p_hat)
    tau2_hat = max(
        (s2 - lambda2 - ybar * ybar * (1.0 - p_hat) / p_hat) / (p_hat * lambda2 * lambda2),
        0.0,
    )
    return theta_hat, tau2_hat


def shrinkage_weights(y, prior: PriorEstimate) -> ShrinkageWeights:
    """Posterior weights h estimating, per row, whether its location is <= 0.

    With ``tau2_hat > 0`` this is the posterior normal probability
    ``Phi(-(y*tau2 + theta) / sqrt(tau2 * (lambda2*tau2 + 1)))``.  At
    ``tau2_hat == 0`` the posterior degenerates; the continuous limit is the
    indicator of ``theta_hat < 0`` (1/2 at exactly 0).
    """
    y = np.asarray(y, dtype=float)
    tau2 = prior.tau2_hat
    theta = prior.theta_hat
    if tau2 > 0.0:
        scale = math.sqrt(tau2 * (prior.lambda2 * tau2 + 1.0))
        h = std_normal_cdf(-(y * tau2 + theta) / scale)
    else:
        limit = 1.0 if theta < 0.0 else (0.5 if theta == 0.0 else 0.0)
        h = np.full(y.shape, limit)
    return ShrinkageWeights(h=h)


def oracle_weights(mu) -> ShrinkageWeights:
    """Infeasible benchmark weights: the exact indicator of location <= 0."""
    mu = np.asarray(mu, dtype=float)
    return ShrinkageWeights(h=(mu <= 0.0).astype(float))


def fit_prior(y, lambda2: float, epsilon: float) -> PriorEstimate:
    """Full method-of-moments fit: estimate p, then (theta, tau2)."""
    p_hat, p_raw = estimate_p(y, epsilon, math.sqrt(lambda2))
    theta_hat, tau2_hat = estimate_theta_tau(y, p_hat, lambda2)
    return PriorEstimate(
        p_hat=p_hat,
        theta_hat=theta_hat,
        tau2_hat=tau2_hat,
        lambda2=lambda2,
        epsilon=epsilon,
        p_raw=p_raw,
    )


def fixed_prior(y, lambda2: float, p: float) -> PriorEstimate:
    """Prior with a user-supplied mixing proportion (p = 1 gives the
    approximate-minimax estimators; the moment fit for theta and tau2 still
    uses the training statistics)."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"fixed p must lie in (0, 1], got {p}")
    theta_hat, tau2_hat = estimate_theta_tau(y, p, lambda2)
    return PriorEstimate(
        p_hat=p,
        theta_hat=theta_hat,
        tau2_hat=tau2_hat,
        lambda2=lambda2,
    )
