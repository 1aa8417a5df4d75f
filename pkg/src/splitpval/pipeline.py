"""Two-sample analysis pipeline: split, transform, weight, test, decide.

The workflow for an M x N two-group matrix: hold out a few columns per group
as training data, compute pooled-SD t statistics separately on the training
and test columns, map both through the probability integral transformation
to the standard normal scale, fit the shrinkage weights on the training
statistics (null variance 1, so the weight model runs at training fraction
1), and form compound p-values from the test statistics.  The usual
two-sided t p-values on the full data provide the simple baseline.  Every
requested procedure is applied at every requested level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .datamodel import DataMatrix, GroupLabels, SplitError, SplitPlan, random_split
from .estimators import estimate_p, estimate_theta_tau, PriorEstimate, shrinkage_weights
from .matrixio import read_labels, read_matrix
from .numerics import RngStream
from .procedures import DecisionSet, bh, qvalue_procedure
from .pvalues import PValueSet, compound_p_standardized, simple_t_p, t_to_z, two_sample_t

__all__ = [
    "AnalysisConfig",
    "DiscoveryReport",
    "FamilyResult",
    "analyze",
    "analyze_matrix",
]

DEFAULT_ALPHAS = tuple(round(0.01 * i, 10) for i in range(1, 21))


@dataclass(frozen=True)
class AnalysisConfig:
    """Settings for one analysis run.

    Exactly one of ``training_cols`` (explicit 0-based column indices) or
    ``train_fraction`` (random split drawn from ``seed``) selects the
    training columns.  ``epsilons`` and ``fixed_ps`` determine the compound
    families; the defaults match a unit-variance training statistic (bands of
    1 and 2 null standard deviations).
    """

    data_path: str | None = None
    labels_path: str | None = None
    training_cols: tuple[int, ...] | None = None
    train_fraction: float | None = None
    epsilons: tuple[float, ...] = (1.0, 2.0)
    fixed_ps: tuple[float, ...] = (0.1, 1.0)
    procedures: tuple[str, ...] = ("BH", "QVALUE")
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    qvalue_lambda_s: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if (self.training_cols is None) == (self.train_fraction is None):
            raise ValueError("specify exactly one of training_cols or train_fraction")
        if not self.procedures:
            raise ValueError("select at least one procedure")
        for proc in self.procedures:
            if proc not in ("BH", "QVALUE"):
                raise ValueError(f"unknown procedure {proc!r}")
        if not self.alphas:
            raise ValueError("need at least one alpha level")
        for a in self.alphas:
            if not 0.0 < a <= 1.0:
                raise ValueError(f"alpha levels must lie in (0, 1], got {a}")
        if self.training_cols is not None:
            object.__setattr__(self, "training_cols", tuple(int(c) for c in self.training_cols))
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "fixed_ps", tuple(float(p) for p in self.fixed_ps))
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "procedures", tuple(self.procedures))


@dataclass(frozen=True)
class FamilyResult:
    """One p-value family: its fitted quantities, p-values, and decisions.

    A compound family whose raw mixing-proportion estimate is nonpositive is
    skipped (no p-values, no decisions) and carries the diagnostic raw value.
    """

    label: str
    skipped: bool = False
    skip_reason: str | None = None
    epsilon: float | None = None
    fixed_p: float | None = None
    p_raw: float | None = None
    p_hat: float | None = None
    theta_hat: float | None = None
    tau2_hat: float | None = None
    pvalues: PValueSet | None = None
    decisions: dict[tuple[str, float], DecisionSet] = field(default_factory=dict)

    def n_discoveries(self, procedure: str, alpha: float) -> int:
        return self.decisions[(procedure, alpha)].n_rejected


@dataclass(frozen=True)
class DiscoveryReport:
    """Full record of an analysis run, sufficient to rerun it bit-identically."""

    config: AnalysisConfig
    n_rows: int
    n_cols: int
    training_cols: tuple[int, ...]
    split_source: str
    row_ids: tuple[str, ...]
    degenerate_rows: tuple[str, ...]
    families: tuple[FamilyResult, ...]

    def family(self, label: str) -> FamilyResult:
        for fam in self.families:
            if fam.label == label:
                return fam
        raise KeyError(f"no family labeled {label!r}")

    def active_families(self) -> tuple[FamilyResult, ...]:
        return tuple(f for f in self.families if not f.skipped)

    def rejected_ids(self, label: str, procedure: str, alpha: float) -> tuple[str, ...]:
        dec = self.family(label).decisions[(procedure, alpha)]
        return tuple(rid for rid, rej in zip(self.row_ids, dec.reject) if rej)


def _training_plan(config: AnalysisConfig, labels: GroupLabels) -> tuple[SplitPlan, str]:
    n = labels.n_cols
    if config.training_cols is not None:
        cols = config.training_cols
        t1 = tuple(c for c in cols if labels.assignment[c] == 1)
        t2 = tuple(c for c in cols if labels.assignment[c] == 2)
        plan = SplitPlan(training_cols=cols, training_by_group=(t1, t2))
        plan.validate_for(n)
        return plan, "explicit"
    plan = random_split(n, config.train_fraction, RngStream(config.seed, 0, 0), groups=labels)
    return plan, f"random(fraction={config.train_fraction:g}, seed={config.seed})"


def _decide(pset: PValueSet, config: AnalysisConfig) -> dict[tuple[str, float], DecisionSet]:
    out: dict[tuple[str, float], DecisionSet] = {}
    for procedure in config.procedures:
        for alpha in config.alphas:
            if procedure == "BH":
                out[(procedure, alpha)] = bh(pset, alpha)
            else:
                out[(procedure, alpha)] = qvalue_procedure(pset, alpha, config.qvalue_lambda_s)
    return out


def analyze_matrix(matrix: DataMatrix, labels: GroupLabels, config: AnalysisConfig) -> DiscoveryReport:
    """Run the full pipeline on an in-memory matrix."""
    if labels.n_cols != matrix.n_cols:
        raise ValueError(
            f"labels cover {labels.n_cols} columns but the matrix has {matrix.n_cols}"
        )
    plan, split_source = _training_plan(config, labels)
    t1, t2 = plan.training_by_group or ((), ())
    if len(t1) < 2 or len(t2) < 2:
        raise SplitError(
            f"need >= 2 training columns per group for a pooled SD, got {len(t1)} and {len(t2)}"
        )
    training = set(plan.training_cols)
    test1 = [c for c in labels.group_cols(1) if c not in training]
    test2 = [c for c in labels.group_cols(2) if c not in training]
    if len(test1) < 2 or len(test2) < 2:
        raise SplitError(
            f"need >= 2 test columns per group, got {len(test1)} and {len(test2)}"
        )

    train_t = two_sample_t(matrix, t1, t2)
    test_t = two_sample_t(matrix, test1, test2)
    full_t = two_sample_t(matrix, labels.group_cols(1), labels.group_cols(2))
    y = t_to_z(train_t.t, train_t.df).z
    z = t_to_z(test_t.t, test_t.df).z
    degenerate = train_t.degenerate | test_t.degenerate | full_t.degenerate

    families: list[FamilyResult] = []

    simple = simple_t_p(matrix, labels)
    simple_pv = simple.p.copy()
    simple_pv[degenerate] = 1.0
    simple_set = PValueSet(p=simple_pv, kind="simple")
    families.append(
        FamilyResult(label="simple-t", pvalues=simple_set, decisions=_decide(simple_set, config))
    )

    def compound_family(label, prior, epsilon=None, fixed=None, p_raw=None):
        weights = shrinkage_weights(y, prior)
        pset = compound_p_standardized(z, weights)
        pv = pset.p.copy()
        pv[degenerate] = 1.0
        pset = PValueSet(p=pv, kind="compound", weight_source=pset.weight_source)
        return FamilyResult(
            label=label,
            epsilon=epsilon,
            fixed_p=fixed,
            p_raw=p_raw,
            p_hat=prior.p_hat,
            theta_hat=prior.theta_hat,
            tau2_hat=prior.tau2_hat,
            pvalues=pset,
            decisions=_decide(pset, config),
        )

    # Training statistics are standard normal under the null, so the weight
    # model runs at unit training variance (training fraction 1).
    for eps in config.epsilons:
        label = f"compound-eps{eps:g}"
        p_hat, p_raw = estimate_p(y, eps, 1.0)
        if p_raw <= 0.0:
            families.append(
                FamilyResult(
                    label=label,
                    skipped=True,
                    skip_reason=f"nonpositive mixing-proportion estimate ({p_raw:.6g})",
                    epsilon=eps,
                    p_raw=p_raw,
                )
            )
            continue
        theta_hat, tau2_hat = estimate_theta_tau(y, p_hat, 1.0)
        prior = PriorEstimate(
            p_hat=p_hat, theta_hat=theta_hat, tau2_hat=tau2_hat,
            lambda2=1.0, epsilon=eps, p_raw=p_raw,
        )
        families.append(compound_family(label, prior, epsilon=eps, p_raw=p_raw))

    for p_fix in config.fixed_ps:
        label = f"compound-p{p_fix:g}"
        theta_hat, tau2_hat = estimate_theta_tau(y, p_fix, 1.0)
        prior = PriorEstimate(p_hat=p_fix, theta_hat=theta_hat, tau2_hat=tau2_hat, lambda2=1.0)
        families.append(compound_family(label, prior, fixed=p_fix))

    return DiscoveryReport(
        config=config,
        n_rows=matrix.n_rows,
        n_cols=matrix.n_cols,
        training_cols=plan.training_cols,
        split_source=split_source,
        row_ids=matrix.row_ids,
        degenerate_rows=tuple(
            rid for rid, bad in zip(matrix.row_ids, degenerate) if bad
        ),
        families=tuple(families),
    )


def analyze(config: AnalysisConfig) -> DiscoveryReport:
    """Ingest the configured data and labels files and run the pipeline."""
    if config.data_path is None or config.labels_path is None:
        raise ValueError("config must carry data_path and labels_path")
    matrix = read_matrix(config.data_path)
    labels = read_labels(config.labels_path, matrix.n_cols)
    return analyze_matrix(matrix, labels, config)
