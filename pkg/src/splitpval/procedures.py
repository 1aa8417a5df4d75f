"""FDR-controlling multiple testing procedures: step-up BH and q-values.

Both operate on any collection of p-values that is uniform and independent
under the true nulls.  The q-value route estimates the null proportion from
the upper tail of the p-values (a single fixed tuning value ``lambda_s``,
default 0.5) and converts each p-value into the smallest estimated positive
FDR at which it would be rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pvalues import PValueSet

__all__ = [
    "DecisionSet",
    "bh",
    "qvalue_procedure",
    "qvalues",
    "storey_pi0",
]


@dataclass(frozen=True)
class DecisionSet:
    """Rejection decisions for M hypotheses.

    For BH, ``reject[m]`` iff ``p[m] <= threshold_used``.  For the q-value
    procedure, ``reject[m]`` iff ``qvalues[m] <= alpha`` and
    ``threshold_used`` is the largest rejected p-value (0 when none).
    """

    reject: np.ndarray
    threshold_used: float
    procedure: str
    alpha: float
    qvalues: np.ndarray | None = None

    @property
    def n_rejected(self) -> int:
        return int(np.count_nonzero(self.reject))


def _pvals(p) -> np.ndarray:
    if isinstance(p, PValueSet):
        return p.p
    return np.asarray(p, dtype=float)


def bh(p, alpha: float) -> DecisionSet:
    """Step-up BH procedure at level ``alpha``.

    Finds the largest rank J with ``p_(J) <= alpha * J / M`` and rejects every
    hypothesis with ``p <= alpha * J / M`` (ties at the threshold included);
    no rejections when no rank qualifies.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    pv = _pvals(p)
    m = pv.size
    sorted_p = np.sort(pv)
    ranks = np.arange(1, m + 1)
    ok = sorted_p <= alpha * ranks / m
    if np.any(ok):
        j = int(np.max(ranks[ok]))
        threshold = alpha * j / m
        reject = pv <= threshold
    else:
        threshold = 0.0
        reject = np.zeros(m, dtype=bool)
    return DecisionSet(reject=reject, threshold_used=float(threshold), procedure="BH", alpha=alpha)


def storey_pi0(p, lambda_s: float = 0.5) -> float:
    """Null-proportion estimate ``#{p > lambda_s} / (M * (1 - lambda_s))``,
    clamped to [1/M, 1]."""
    if not 0.0 <= lambda_s < 1.0:
        raise ValueError(f"lambda_s must lie in [0, 1), got {lambda_s}")
    pv = _pvals(p)
    m = pv.size
    if m < 1:
        raise ValueError("need at least one p-value")
    raw = np.count_nonzero(pv > lambda_s) / (m * (1.0 - lambda_s))
    return float(min(max(raw, 1.0 / m), 1.0))


def qvalues(p, lambda_s: float = 0.5) -> np.ndarray:
    """q-values: smallest estimated pFDR over rejection thresholds >= each p.

    The pFDR at threshold g is estimated by
    ``pi0 * g * M / (#{p <= g} * (1 - (1 - g)^M))``; evaluating at the sorted
    p-values and taking the descending running minimum gives the q-values,
    capped at 1.  Nondecreasing in p, with ties mapped to equal q-values.
    """
    pv = _pvals(p)
    m = pv.size
    pi0 = storey_pi0(pv, lambda_s)
    order = np.argsort(pv, kind="stable")
    sorted_p = pv[order]
    counts = np.maximum(np.searchsorted(sorted_p, sorted_p, side="right"), 1)
    # P(R > 0) factor 1 - (1-g)^M, computed via expm1 for small g; at g = 0
    # the g / (1 - (1-g)^M) ratio is replaced by its limit 1/M.
    with np.errstate(divide="ignore", invalid="ignore"):
        prob_any = -np.expm1(m * np.log1p(-sorted_p))
        ratio = np.where(sorted_p > 0.0, sorted_p / prob_any, 1.0 / m)
    pfdr = pi0 * m * ratio / counts
    q_sorted = np.minimum(np.minimum.accumulate(pfdr[::-1])[::-1], 1.0)
    q = np.empty(m)
    q[order] = q_sorted
    return q


def qvalue_procedure(p, alpha: float, lambda_s: float = 0.5) -> DecisionSet:
    """Reject every hypothesis whose q-value is <= ``alpha``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    pv = _pvals(p)
    q = qvalues(pv, lambda_s)
    reject = q <= alpha
    threshold = float(np.max(pv[reject])) if np.any(reject) else 0.0
    return DecisionSet(
        reject=reject,
        threshold_used=threshold,
        procedure="QVALUE",
        alpha=alpha,
        qvalues=q,
    )
