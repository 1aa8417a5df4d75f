"""Compound p-values from training/test data splits, with FDR procedures.

The package splits an M x N data matrix column-wise into training and test
data, fits empirical-Bayes shrinkage weights on the training side, and builds
per-hypothesis p-values whose size is spent asymmetrically across the two
tails.  Under true nulls these compound p-values stay exactly uniform and
mutually independent (the weights never see the test data), so standard
p-value based procedures — step-up BH and the q-value procedure here — keep
their error-rate guarantees while rejecting more false nulls.
"""

from .datamodel import (
    DataMatrix,
    GroupLabels,
    SplitError,
    SplitPlan,
    StatVectors,
    random_split,
    split,
    sufficient_stats,
)
from .estimators import (
    PriorEstimate,
    ShrinkageWeights,
    estimate_p,
    estimate_theta_tau,
    fit_prior,
    fixed_prior,
    oracle_weights,
    shrinkage_weights,
)
from .matrixio import MatrixParseError, read_labels, read_matrix, write_matrix
from .numerics import RngStream, draw_normal, std_normal_cdf, std_normal_quantile, student_t_cdf
from .pipeline import AnalysisConfig, DiscoveryReport, FamilyResult, analyze, analyze_matrix
from .power import average_power, power_oracle, power_simple, region_boundary
from .procedures import DecisionSet, bh, qvalue_procedure, qvalues, storey_pi0
from .pvalues import (
    PValueSet,
    TestStatistics,
    TwoSampleT,
    compound_p,
    compound_p_standardized,
    oracle_p,
    simple_p,
    simple_t_p,
    t_to_z,
    two_sample_t,
)
from .simulation import (
    SimConfig,
    SimulationReport,
    WeightMode,
    config_grid,
    mu_grid,
    run_replicate,
    run_study,
)
from .synthetic import two_group_dataset

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "DataMatrix",
    "DecisionSet",
    "DiscoveryReport",
    "FamilyResult",
    "GroupLabels",
    "MatrixParseError",
    "PriorEstimate",
    "PValueSet",
    "RngStream",
    "ShrinkageWeights",
    "SimConfig",
    "SimulationReport",
    "SplitError",
    "SplitPlan",
    "StatVectors",
    "TestStatistics",
    "TwoSampleT",
    "WeightMode",
    "analyze",
    "analyze_matrix",
    "average_power",
    "bh",
    "compound_p",
    "compound_p_standardized",
    "config_grid",
    "draw_normal",
    "estimate_p",
    "estimate_theta_tau",
    "fit_prior",
    "fixed_prior",
    "mu_grid",
    "oracle_p",
    "oracle_weights",
    "power_oracle",
    "power_simple",
    "qvalue_procedure",
    "qvalues",
    "random_split",
    "read_labels",
    "read_matrix",
    "region_boundary",
    "run_replicate",
    "run_study",
    "shrinkage_weights",
    "simple_p",
    "simple_t_p",
    "split",
    "std_normal_cdf",
    "std_normal_quantile",
    "storey_pi0",
    "student_t_cdf",
    "sufficient_stats",
    "t_to_z",
    "two_group_dataset",
    "two_sample_t",
    "write_matrix",
]
