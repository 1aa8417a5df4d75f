"""Independent oracles used to derive and re-check frozen expected values.

Nothing here shares code paths with the package: the normal CDF is a Taylor
series for erf evaluated in high-precision arithmetic, the quantile is plain
bisection on that series, the t CDF integrates the density numerically, the
BH oracle scans every candidate cutoff exhaustively, and the q-value oracle
is the plain-python recursion.  The FROZEN constants below were produced by
these oracles; test_frozen_constants re-derives them.
"""

from __future__ import annotations

import math

import mpmath as mp


def normal_cdf_oracle(x: float) -> float:
    """Phi(x) via the erf Taylor series at 80 decimal digits (|x| <= ~12)."""
    with mp.workdps(80):
        z = mp.mpf(x) / mp.sqrt(2)
        total = mp.mpf(0)
        fact = mp.mpf(1)
        for n in range(400):
            if n > 0:
                fact *= n
            term = (-1) ** n * z ** (2 * n + 1) / (fact * (2 * n + 1))
            total += term
            if n > 5 and abs(term) < mp.mpf(10) ** -70:
                break
        erf = total * 2 / mp.sqrt(mp.pi)
        return float(mp.mpf("0.5") * (1 + erf))


def normal_quantile_oracle(p: float) -> float:
    """Bisection inverse of normal_cdf_oracle on [-12, 12]."""
    lo, hi = -12.0, 12.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if normal_cdf_oracle(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def t_cdf_oracle(t: float, df: int) -> float:
    """Student-t CDF by direct numerical integration of the density."""
    with mp.workdps(40):
        dfm = mp.mpf(df)
        c = mp.gamma((dfm + 1) / 2) / (mp.sqrt(dfm * mp.pi) * mp.gamma(dfm / 2))
        dens = lambda u: c * (1 + u * u / dfm) ** (-(dfm + 1) / 2)
        return float(mp.mpf("0.5") + mp.quad(dens, [0, mp.mpf(t)]))


def bh_exhaustive(pvals, alpha: float):
    """BH by brute force: try every sorted p-value as the defining cutoff."""
    p = list(pvals)
    m = len(p)
    sorted_p = sorted(p)
    best_rank = 0
    for rank in range(1, m + 1):
        if sorted_p[rank - 1] <= alpha * rank / m:
            best_rank = rank
    threshold = alpha * best_rank / m if best_rank else 0.0
    return [x <= threshold for x in p] if best_rank else [False] * m


def qvalues_reference(pvals, lambda_s: float):
    """Plain-python q-value recursion (descending running minimum)."""
    p = [float(x) for x in pvals]
    m = len(p)
    pi0 = min(max(sum(1 for x in p if x > lambda_s) / (m * (1.0 - lambda_s)), 1.0 / m), 1.0)
    order = sorted(range(m), key=lambda i: p[i])
    q = [0.0] * m
    running = math.inf
    for idx in reversed(order):
        g = p[idx]
        count = sum(1 for x in p if x <= g)
        if g > 0.0:
            pfdr = pi0 * g * m / (count * (1.0 - (1.0 - g) ** m))
        else:
            pfdr = pi0 / count
        running = min(running, pfdr, 1.0)
        q[idx] = running
    return q


def ks_statistic(u) -> float:
    """One-sample Kolmogorov statistic against Uniform(0, 1)."""
    x = sorted(float(v) for v in u)
    n = len(x)
    d = 0.0
    for i, v in enumerate(x):
        d = max(d, (i + 1) / n - v, v - i / n)
    return d


# Frozen expected values, produced by the oracles above.
FROZEN = {
    "phi(1.959964)": 0.9750000009035576,
    "phi(-sqrt2)": 0.078649603525142551,
    "phi(1)-phi(-1)": 0.68268949213708585,
    "phi(-1.5)": 0.066807201268858066,
    "phi(1.5)": 0.93319279873114193,
    "1-phi(2)": 0.022750131948179209,
    "phi(-1.645)": 0.049984905539121365,
    "quantile(0.05)": -1.6448536269514727,
    "power_oracle(-1,0,0.05)": 0.25951102284144406,
    "power_simple(-1,0.05)": 0.17007504575308752,
    "power_oracle(-1,0.4,0.05)": 0.19207999768874799,
    "mu_grid_mid(2,2,1000)": 1.9974958751952503,
    "t_cdf(2,100)": 0.97589391063443316,
    "t_cdf(2.449489742783178,4)": 0.96475800154489002,
    "t_cdf(1.5,7)": 0.91135075650501498,
    "t_cdf(-0.8,12)": 0.21963061580939958,
    "z_from_t(2,100)": 1.9754934364422563,
    "simple_t_p(2,100)": 0.048212178731133683,
    "qvalues(0.01,0.02,0.6,0.8;0.5)": (
        0.515252504642424,
        0.515252504642424,
        0.801282051282051,
        0.801282051282051,
    ),
}
