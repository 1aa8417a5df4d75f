"""Monte Carlo engine for the power comparison study.

Each replicate draws training and test statistic vectors directly at the
sufficient-statistic level — ``y ~ N(lambda2 * mu, lambda2)`` and
``z ~ N((1 - lambda2) * mu, 1 - lambda2)`` per row — builds every p-value
family on the shared data (simple from ``w = y + z``, oracle from the true
locations, one compound family per weight mode), applies BH and the q-value
procedure, and records sample power, sample FDR, and sample pFDR.  Replicates
use dedicated substreams keyed by the replicate index, so runs are
reproducible bit-for-bit and replicates are independent of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .estimators import fit_prior, fixed_prior, shrinkage_weights
from .numerics import RngStream, draw_normal, std_normal_quantile
from .procedures import DecisionSet, bh, qvalue_procedure
from .pvalues import PValueSet, compound_p, oracle_p, simple_p

__all__ = [
    "DEFAULT_WEIGHT_MODES",
    "PROCEDURES",
    "ReportRow",
    "ReplicateResult",
    "SampleMetrics",
    "SimConfig",
    "SimulationReport",
    "WeightMode",
    "config_grid",
    "mu_grid",
    "run_replicate",
    "run_study",
]

PROCEDURES = ("BH", "QVALUE")


@dataclass(frozen=True)
class WeightMode:
    """How the compound family obtains its tail weights.

    ``kind == "epsilon"``: estimate the mixing proportion with band
    half-width ``value * sqrt(lambda2)`` (``value`` is a multiple of the null
    SD of the training statistics).  ``kind == "fixed"``: use ``value`` as
    the mixing proportion directly.
    """

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in ("epsilon", "fixed"):
            raise ValueError(f"unknown weight mode kind {self.kind!r}")
        if self.value <= 0:
            raise ValueError(f"weight mode value must be > 0, got {self.value}")

    def label(self) -> str:
        if self.kind == "epsilon":
            return f"compound-eps{self.value:g}x"
        return f"compound-p{self.value:g}"

    def epsilon_for(self, lambda2: float) -> float | None:
        if self.kind == "epsilon":
            return self.value * math.sqrt(lambda2)
        return None


DEFAULT_WEIGHT_MODES = (
    WeightMode("epsilon", 1.0),
    WeightMode("epsilon", 2.0),
    WeightMode("fixed", 1.0),
)


@dataclass(frozen=True)
class SimConfig:
    """One simulation cell: model parameters plus study bookkeeping."""

    M: int
    M1: int
    theta: float
    tau: float
    lambda2: float
    weight_modes: tuple[WeightMode, ...] = DEFAULT_WEIGHT_MODES
    alpha: float = 0.05
    K: int = 200
    seed: int = 0
    qvalue_lambda_s: float = 0.5

    def __post_init__(self):
        if not 1 <= self.M1 <= self.M:
            raise ValueError(f"need 1 <= M1 <= M, got M1={self.M1}, M={self.M}")
        if self.K < 1:
            raise ValueError(f"need K >= 1, got {self.K}")
        if not 0.0 < self.lambda2 < 1.0:
            raise ValueError(f"lambda2 must lie in (0, 1), got {self.lambda2}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        object.__setattr__(self, "weight_modes", tuple(self.weight_modes))

    def family_labels(self) -> tuple[str, ...]:
        return ("simple", "oracle") + tuple(m.label() for m in self.weight_modes)


def mu_grid(theta: float, tau: float, M1: int) -> np.ndarray:
    """Alternative locations: expected order statistics of Normal(theta, tau^2).

    Entry m (1-based) is ``theta + tau * Phi^{-1}(m / (M1 + 1))``; the grid is
    nondecreasing, and identically ``theta`` when ``tau == 0``.
    """
    if M1 < 1:
        raise ValueError(f"need M1 >= 1, got {M1}")
    probs = np.arange(1, M1 + 1) / (M1 + 1)
    return theta + tau * std_normal_quantile(probs)


@dataclass(frozen=True)
class SampleMetrics:
    """Per-replicate outcome for one (family, procedure) pair.

    ``pfdr`` is None when no hypothesis was rejected (V/R undefined at R=0);
    ``fdr`` uses the V/max(R, 1) convention.
    """

    power: float
    fdr: float
    pfdr: float | None
    n_rejected: int


@dataclass(frozen=True)
class ReplicateResult:
    """All families and decisions of a single replicate."""

    k: int
    pvalues: dict[str, PValueSet]
    decisions: dict[tuple[str, str], DecisionSet]
    metrics: dict[tuple[str, str], SampleMetrics]


def _replicate_pvalues(config: SimConfig, mu: np.ndarray, k: int) -> dict[str, PValueSet]:
    lam2 = config.lambda2
    lam = math.sqrt(lam2)
    y = lam2 * mu + lam * draw_normal(RngStream(config.seed, k, 0), 0.0, 1.0, config.M)
    z = (1.0 - lam2) * mu + math.sqrt(1.0 - lam2) * draw_normal(
        RngStream(config.seed, k, 1), 0.0, 1.0, config.M
    )
    families: dict[str, PValueSet] = {
        "simple": simple_p(y + z),
        "oracle": oracle_p(z, mu, lam2),
    }
    for mode in config.weight_modes:
        if mode.kind == "epsilon":
            prior = fit_prior(y, lam2, mode.epsilon_for(lam2))
            source = f"estimated(eps={prior.epsilon:g})"
        else:
            prior = fixed_prior(y, lam2, mode.value)
            source = f"fixed(p={mode.value:g})"
        weights = shrinkage_weights(y, prior)
        families[mode.label()] = compound_p(z, weights, lam2, weight_source=source)
    return families


def run_replicate(config: SimConfig, k: int) -> ReplicateResult:
    """Run replicate ``k``: draw data, build all families, apply both procedures."""
    mu = np.concatenate([mu_grid(config.theta, config.tau, config.M1), np.zeros(config.M - config.M1)])
    families = _replicate_pvalues(config, mu, k)
    is_alt = np.arange(config.M) < config.M1
    decisions: dict[tuple[str, str], DecisionSet] = {}
    metrics: dict[tuple[str, str], SampleMetrics] = {}
    for label, pset in families.items():
        for procedure in PROCEDURES:
            if procedure == "BH":
                dec = bh(pset, config.alpha)
            else:
                dec = qvalue_procedure(pset, config.alpha, config.qvalue_lambda_s)
            r = dec.n_rejected
            v = int(np.count_nonzero(dec.reject & ~is_alt))
            true_pos = r - v
            metrics[(label, procedure)] = SampleMetrics(
                power=true_pos / config.M1,
                fdr=v / max(r, 1),
                pfdr=(v / r) if r > 0 else None,
                n_rejected=r,
            )
            decisions[(label, procedure)] = dec
    return ReplicateResult(k=k, pvalues=families, decisions=decisions, metrics=metrics)


@dataclass(frozen=True)
class ReportRow:
    """Averages over replicates for one (configuration, family, procedure) cell.

    ``avg_pfdr`` conditions on replicates with at least one rejection;
    ``n_zero_rejections`` counts the excluded replicates.  Standard errors
    are sample-SD / sqrt(#replicates entering the average).
    """

    theta: float
    tau: float
    lambda2: float
    family: str
    epsilon: float | None
    fixed_p: float | None
    procedure: str
    alpha: float
    avg_power: float
    power_stderr: float
    avg_fdr: float
    fdr_stderr: float
    avg_pfdr: float | None
    pfdr_stderr: float | None
    n_zero_rejections: int
    K: int
    M: int
    M1: int
    seed: int
    qvalue_lambda_s: float


@dataclass(frozen=True)
class SimulationReport:
    """Study results, one row per (configuration, family, procedure)."""

    rows: tuple[ReportRow, ...]
    traces: dict[tuple, np.ndarray] = field(default_factory=dict)

    def row(self, **match) -> ReportRow:
        """The unique row whose fields equal every given keyword."""
        hits = [r for r in self.rows if all(getattr(r, k) == v for k, v in match.items())]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} rows match {match!r}")
        return hits[0]


def _mean_stderr(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    stderr = float(arr.std(ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
    return mean, stderr


def run_study(configs, keep_traces: bool = False) -> SimulationReport:
    """Run every configuration for K replicates and average the sample metrics.

    Replicates are accumulated in ascending order, so reports are
    deterministic given the configurations (seed included).  With
    ``keep_traces`` the per-replicate power/FDR series are retained, keyed by
    (theta, tau, lambda2, family, procedure, metric).
    """
    rows: list[ReportRow] = []
    traces: dict[tuple, np.ndarray] = {}
    for config in configs:
        acc_power: dict[tuple[str, str], list[float]] = {}
        acc_fdr: dict[tuple[str, str], list[float]] = {}
        acc_pfdr: dict[tuple[str, str], list[float]] = {}
        zero_r: dict[tuple[str, str], int] = {}
        for k in range(config.K):
            rep = run_replicate(config, k)
            for key, sm in rep.metrics.items():
                acc_power.setdefault(key, []).append(sm.power)
                acc_fdr.setdefault(key, []).append(sm.fdr)
                if sm.pfdr is None:
                    zero_r[key] = zero_r.get(key, 0) + 1
                else:
                    acc_pfdr.setdefault(key, []).append(sm.pfdr)
        mode_by_label = {m.label(): m for m in config.weight_modes}
        for label in config.family_labels():
            for procedure in PROCEDURES:
                key = (label, procedure)
                avg_power, power_se = _mean_stderr(acc_power[key])
                avg_fdr, fdr_se = _mean_stderr(acc_fdr[key])
                if acc_pfdr.get(key):
                    avg_pfdr, pfdr_se = _mean_stderr(acc_pfdr[key])
                else:
                    avg_pfdr, pfdr_se = None, None
                mode = mode_by_label.get(label)
                rows.append(
                    ReportRow(
                        theta=config.theta,
                        tau=config.tau,
                        lambda2=config.lambda2,
                        family=label,
                        epsilon=mode.epsilon_for(config.lambda2) if mode else None,
                        fixed_p=mode.value if (mode and mode.kind == "fixed") else None,
                        procedure=procedure,
                        alpha=config.alpha,
                        avg_power=avg_power,
                        power_stderr=power_se,
                        avg_fdr=avg_fdr,
                        fdr_stderr=fdr_se,
                        avg_pfdr=avg_pfdr,
                        pfdr_stderr=pfdr_se,
                        n_zero_rejections=zero_r.get(key, 0),
                        K=config.K,
                        M=config.M,
                        M1=config.M1,
                        seed=config.seed,
                        qvalue_lambda_s=config.qvalue_lambda_s,
                    )
                )
                if keep_traces:
                    base = (config.theta, config.tau, config.lambda2, label, procedure)
                    traces[base + ("power",)] = np.asarray(acc_power[key])
                    traces[base + ("fdr",)] = np.asarray(acc_fdr[key])
    return SimulationReport(rows=tuple(rows), traces=traces)


def config_grid(thetas, taus, lambda2s, **shared) -> list[SimConfig]:
    """Cross product of (theta, tau, lambda2) cells sharing the other settings."""
    return [
        SimConfig(theta=float(th), tau=float(ta), lambda2=float(l2), **shared)
        for th in thetas
        for ta in taus
        for l2 in lambda2s
    ]
