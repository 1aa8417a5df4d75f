"""Closed-form power for the simple and oracle decision functions.

The simple test is the two-sided size-eta test of the full-data statistic.
The oracle test spends all of its size in the tail matching the true sign of
the location, but only sees the test-data fraction ``1 - lambda2`` of the
effect.  ``region_boundary`` traces, per location, the largest training
fraction at which the oracle still beats the simple test.
"""

from __future__ import annotations

import math

import numpy as np

from .numerics import std_normal_cdf, std_normal_quantile

__all__ = [
    "average_power",
    "power_oracle",
    "power_simple",
    "region_boundary",
]

REGION_TOL = 1e-6


def power_simple(mu: float, eta: float) -> float:
    """Power of the two-sided simple test of size ``eta`` at location ``mu``."""
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    lower = std_normal_quantile(eta / 2.0)
    upper = std_normal_quantile(1.0 - eta / 2.0)
    return float(std_normal_cdf(lower - mu) + std_normal_cdf(mu - upper))


def power_oracle(mu: float, lambda2: float, eta: float) -> float:
    """Power of the sign-informed oracle test at training fraction ``lambda2``.

    The tail cutoffs put all of the size on the side indicated by
    ``mu <= 0`` and the effect shrinks to ``sqrt(1 - lambda2) * mu``; the
    boundary quantiles evaluate on the extended reals, so the off-side tail
    contributes exactly 0.
    """
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    if not 0.0 <= lambda2 < 1.0:
        raise ValueError(f"lambda2 must lie in [0, 1), got {lambda2}")
    ind = 1.0 if mu <= 0.0 else 0.0
    lower = std_normal_quantile(eta * ind)
    upper = std_normal_quantile(1.0 - eta * (1.0 - ind))
    effect = math.sqrt(1.0 - lambda2) * mu
    return float(std_normal_cdf(lower - effect) + (1.0 - std_normal_cdf(upper - effect)))


def average_power(mu, lambda2: float, eta: float, alt_index, kind: str) -> float:
    """Mean per-hypothesis power over the designated alternatives.

    ``kind`` selects the simple or oracle formula; ``alt_index`` must be
    nonempty.
    """
    mu = np.asarray(mu, dtype=float)
    alt_index = np.asarray(alt_index, dtype=int)
    if alt_index.size == 0:
        raise ValueError("alt_index must be nonempty")
    if kind == "simple":
        vals = [power_simple(m, eta) for m in mu[alt_index]]
    elif kind == "oracle":
        vals = [power_oracle(m, lambda2, eta) for m in mu[alt_index]]
    else:
        raise ValueError(f"kind must be 'simple' or 'oracle', got {kind!r}")
    return float(np.mean(vals))


def region_boundary(mu_grid, eta: float) -> np.ndarray:
    """Largest training fraction at which the oracle test beats the simple test.

    For each nonzero ``mu``, returns the supremum ``lambda2*`` such that the
    oracle power exceeds the simple power for every ``lambda2`` below it
    (0 when the oracle never dominates).  Oracle power is strictly decreasing
    in the training fraction, so the crossing is unique; it is located by
    bisection to within ``REGION_TOL``.
    """
    mu_grid = np.asarray(mu_grid, dtype=float)
    if np.any(mu_grid == 0.0):
        raise ValueError("mu grid must exclude 0 (both powers equal eta there)")
    out = np.empty(mu_grid.shape)
    for i, mu in enumerate(mu_grid):
        target = power_simple(mu, eta)
        if power_oracle(mu, 0.0, eta) <= target:
            out[i] = 0.0
            continue
        lo, hi = 0.0, 1.0 - 1e-12
        if power_oracle(mu, hi, eta) > target:
            out[i] = hi
            continue
        while hi - lo > REGION_TOL:
            mid = 0.5 * (lo + hi)
            if power_oracle(mu, mid, eta) > target:
                lo = mid
            else:
                hi = mid
        out[i] = 0.5 * (lo + hi)
    return out
