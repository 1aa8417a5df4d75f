"""Simple, oracle, and compound p-value constructions.

All three families are valid inputs to p-value based multiple testing
procedures: under a true null each p-value is uniform, and null p-values are
mutually independent when the underlying test statistics are.  The compound
family spends a hypothesis's size unevenly across the two tails according to
a weight ``h`` estimated from training data; the oracle family is the
infeasible benchmark that uses the true sign indicator instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .datamodel import DataMatrix, GroupLabels
from .estimators import ShrinkageWeights, oracle_weights

__all__ = [
    "PValueSet",
    "TestStatistics",
    "TwoSampleT",
    "compound_p",
    "compound_p_standardized",
    "oracle_p",
    "simple_p",
    "simple_t_p",
    "t_to_z",
    "two_sample_t",
]


@dataclass(frozen=True)
class PValueSet:
    """M p-values tagged with their construction.

    ``kind`` is one of ``simple``, ``oracle``, ``compound``.  ``lambda2``
    records the training fraction used to scale raw test statistics (None for
    already-standardized pipelines) and ``weight_source`` describes where the
    tail weights came from, e.g. ``"oracle"``, ``"estimated(eps=0.1)"`` or
    ``"fixed(p=1)"``.
    """

    p: np.ndarray
    kind: str
    lambda2: float | None = None
    weight_source: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.size and (np.min(arr) < 0.0 or np.max(arr) > 1.0 or np.any(np.isnan(arr))):
            raise ValueError("p-values must lie in [0, 1]")
        if self.kind not in ("simple", "oracle", "compound"):
            raise ValueError(f"unknown p-value kind {self.kind!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "p", arr)

    def __len__(self) -> int:
        return self.p.size


@dataclass(frozen=True)
class TestStatistics:
    """Test statistics on the standard-normal scale (finite entries)."""

    z: np.ndarray
    df_used: int | None = None


@dataclass(frozen=True)
class TwoSampleT:
    """Pooled-SD two-sample t statistics with their shared degrees of freedom.

    Rows with zero pooled standard deviation are flagged in ``degenerate``
    and carry a placeholder statistic of 0; downstream p-value constructions
    assign such rows p = 1.
    """

    t: np.ndarray
    df: int
    degenerate: np.ndarray


def simple_p(w) -> PValueSet:
    """Two-sided p-values ``2 * (1 - Phi(|w|))`` for standard-normal-scale
    full-data statistics."""
    w = np.asarray(w, dtype=float)
    return PValueSet(p=2.0 * special.ndtr(-np.abs(w)), kind="simple")


def _min_tail_ratio(z_std: np.ndarray, h: np.ndarray) -> np.ndarray:
    """min{Phi(z)/h, (1 - Phi(z))/(1 - h)} with the a/0 = +inf convention.

    The minimum never exceeds 1 in exact arithmetic (both ratios above 1
    would force Phi(z) > h and Phi(z) < h simultaneously); the final clip is
    a float-safety guard only.
    """
    lower = special.ndtr(z_std)
    upper = special.ndtr(-z_std)
    ratio_lo = np.where(h > 0.0, lower / np.where(h > 0.0, h, 1.0), np.inf)
    ratio_hi = np.where(h < 1.0, upper / np.where(h < 1.0, 1.0 - h, 1.0), np.inf)
    return np.minimum(np.minimum(ratio_lo, ratio_hi), 1.0)


def compound_p(z, weights: ShrinkageWeights, lambda2: float, weight_source: str | None = None) -> PValueSet:
    """Compound p-values from raw test statistics with variance ``1 - lambda2``.

    The statistics are standardized via ``z / sqrt(1 - lambda2)`` and each
    hypothesis's size is split between the tails by its weight ``h``: the
    p-value is ``min{Phi(z')/h, (1 - Phi(z'))/(1 - h)}``.  Weight 1/2
    recovers the two-sided simple p-value of ``z'``; weights 0 and 1 give
    purely one-tailed tests.
    """
    if not 0.0 <= lambda2 < 1.0:
        raise ValueError(f"training fraction must lie in [0, 1), got {lambda2}")
    z = np.asarray(z, dtype=float)
    z_std = z / math.sqrt(1.0 - lambda2)
    return PValueSet(
        p=_min_tail_ratio(z_std, weights.h),
        kind="compound",
        lambda2=lambda2,
        weight_source=weight_source,
    )


def compound_p_standardized(z, weights: ShrinkageWeights, weight_source: str | None = None) -> PValueSet:
    """Compound p-values for statistics that are already standard normal
    under the null (transformed-statistic pipelines); no rescaling applied."""
    z = np.asarray(z, dtype=float)
    return PValueSet(
        p=_min_tail_ratio(z, weights.h),
        kind="compound",
        weight_source=weight_source,
    )


def oracle_p(z, mu, lambda2: float) -> PValueSet:
    """Benchmark p-values using the true sign indicator as the tail weight."""
    pv = compound_p(z, oracle_weights(mu), lambda2)
    return PValueSet(p=pv.p, kind="oracle", lambda2=lambda2, weight_source="oracle")


def two_sample_t(matrix: DataMatrix, cols1, cols2) -> TwoSampleT:
    """Pooled-SD two-sample t statistic per row: (mean2 - mean1) / (sp * sqrt(1/n1 + 1/n2)).

    Requires at least two columns per group; df = n1 + n2 - 2.  Zero
    pooled-SD rows are flagged and given t = 0.
    """
    cols1 = list(cols1)
    cols2 = list(cols2)
    n1, n2 = len(cols1), len(cols2)
    if n1 < 2 or n2 < 2:
        raise ValueError(f"need >= 2 columns per group, got {n1} and {n2}")
    if set(cols1) & set(cols2):
        raise ValueError("groups must use disjoint columns")
    a = matrix.values[:, cols1]
    b = matrix.values[:, cols2]
    v1 = a.var(axis=1, ddof=1)
    v2 = b.var(axis=1, ddof=1)
    sp = np.sqrt(((n1 - 1) * v1 + (n2 - 1) * v2) / (n1 + n2 - 2))
    denom = sp * math.sqrt(1.0 / n1 + 1.0 / n2)
    degenerate = denom == 0.0
    diff = b.mean(axis=1) - a.mean(axis=1)
    t = np.divide(diff, denom, out=np.zeros_like(diff), where=~degenerate)
    return TwoSampleT(t=t, df=n1 + n2 - 2, degenerate=degenerate)


def t_to_z(t, df: int) -> TestStatistics:
    """Map t statistics to the standard normal scale via the probability
    integral transformation: ``z = Phi^{-1}(T_df(t))``.

    Evaluated through the matching tail so extreme statistics keep full
    precision; tail probabilities that underflow entirely are floored at the
    smallest normal double, capping |z| near 37.5 and keeping z finite.
    """
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    t = np.asarray(t, dtype=float)
    tail = special.stdtr(df, -np.abs(t))
    tail = np.maximum(tail, np.finfo(float).tiny)
    z = np.where(t >= 0.0, -special.ndtri(tail), special.ndtri(tail))
    return TestStatistics(z=z, df_used=int(df))


def simple_t_p(matrix: DataMatrix, groups: GroupLabels) -> PValueSet:
    """Two-sided two-sample-t p-values on the full data (df = N - 2).

    Degenerate (zero pooled-SD) rows receive p = 1.
    """
    res = two_sample_t(matrix, groups.group_cols(1), groups.group_cols(2))
    p = 2.0 * special.stdtr(res.df, -np.abs(res.t))
    p[res.degenerate] = 1.0
    return PValueSet(p=p, kind="simple")
