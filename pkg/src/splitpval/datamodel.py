"""Data matrix container, training/test column splits, and sufficient statistics.

Rows index hypotheses (features, genes), columns index samples.  A split
partitions the columns into a training set T and a test set; the training
fraction is ``lambda2 = |T| / N``.  Row sums over each side give the per-row
sufficient statistics ``y`` (training), ``z`` (test) and ``w = y + z`` (full
data) used by the estimators and p-value constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import RngStream

__all__ = [
    "DataMatrix",
    "GroupLabels",
    "SplitError",
    "SplitPlan",
    "StatVectors",
    "random_split",
    "split",
    "sufficient_stats",
]


class SplitError(ValueError):
    """Invalid or infeasible training/test column split."""


@dataclass(frozen=True)
class DataMatrix:
    """Immutable M x N matrix of observations with row/column labels.

    Requires M >= 1, N >= 2 and no missing (non-finite) entries.  Values are
    stored row-major since all per-hypothesis computations iterate over rows.
    """

    values: np.ndarray
    row_ids: tuple[str, ...] = ()
    col_ids: tuple[str, ...] = ()

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.values, dtype=float))
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got ndim={arr.ndim}")
        m, n = arr.shape
        if m < 1 or n < 2:
            raise ValueError(f"matrix must be at least 1 x 2, got {m} x {n}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix contains missing or non-finite entries")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        row_ids = tuple(self.row_ids) or tuple(f"r{i + 1}" for i in range(m))
        col_ids = tuple(self.col_ids) or tuple(f"c{j + 1}" for j in range(n))
        if len(row_ids) != m:
            raise ValueError(f"got {len(row_ids)} row ids for {m} rows")
        if len(col_ids) != n:
            raise ValueError(f"got {len(col_ids)} column ids for {n} columns")
        object.__setattr__(self, "row_ids", row_ids)
        object.__setattr__(self, "col_ids", col_ids)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    def take_cols(self, cols) -> "DataMatrix":
        """Column subset in the given order, preserving row order and labels."""
        cols = list(cols)
        return DataMatrix(
            self.values[:, cols],
            row_ids=self.row_ids,
            col_ids=tuple(self.col_ids[j] for j in cols),
        )


@dataclass(frozen=True)
class GroupLabels:
    """Two-group assignment of the N columns, values in {1, 2}, both nonempty."""

    assignment: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.assignment, dtype=int)
        if arr.ndim != 1:
            raise ValueError("group labels must be a flat sequence")
        if not np.all(np.isin(arr, (1, 2))):
            raise ValueError("group labels must be 1 or 2")
        if not (np.any(arr == 1) and np.any(arr == 2)):
            raise ValueError("both groups must be nonempty")
        arr.flags.writeable = False
        object.__setattr__(self, "assignment", arr)

    @property
    def n_cols(self) -> int:
        return self.assignment.size

    def group_cols(self, group: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == group)


@dataclass(frozen=True)
class SplitPlan:
    """Training column index set T (0-based), optionally recorded per group.

    Valid plans are nonempty proper subsets of the columns, so the training
    fraction ``|T| / N`` lies strictly between 0 and 1.
    """

    training_cols: tuple[int, ...]
    training_by_group: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __post_init__(self):
        cols = tuple(sorted(int(c) for c in self.training_cols))
        object.__setattr__(self, "training_cols", cols)
        if self.training_by_group is not None:
            by_group = tuple(tuple(sorted(int(c) for c in g)) for g in self.training_by_group)
            if len(by_group) != 2:
                raise SplitError("per-group training sets must cover exactly two groups")
            merged = tuple(sorted(by_group[0] + by_group[1]))
            if merged != cols:
                raise SplitError("per-group training sets do not partition the training set")
            object.__setattr__(self, "training_by_group", by_group)

    def validate_for(self, n_cols: int) -> None:
        cols = self.training_cols
        if len(cols) == 0:
            raise SplitError("training set is empty")
        if len(set(cols)) != len(cols):
            raise SplitError("training set contains duplicate columns")
        if cols[0] < 0 or cols[-1] >= n_cols:
            raise SplitError(f"training columns out of range for {n_cols} columns")
        if len(cols) >= n_cols:
            raise SplitError("training set must leave at least one test column")

    def test_cols(self, n_cols: int) -> tuple[int, ...]:
        training = set(self.training_cols)
        return tuple(j for j in range(n_cols) if j not in training)

    def lambda2(self, n_cols: int) -> float:
        return len(self.training_cols) / n_cols


@dataclass(frozen=True)
class StatVectors:
    """Per-row sufficient statistics: y over training columns, z over test, w = y + z."""

    y: np.ndarray
    z: np.ndarray
    w: np.ndarray
    lambda2: float


def split(matrix: DataMatrix, plan: SplitPlan) -> tuple[DataMatrix, DataMatrix]:
    """Partition the matrix columns into (training, test) per the plan.

    The two outputs are column-disjoint and jointly recover every column;
    row order is preserved.
    """
    plan.validate_for(matrix.n_cols)
    training = matrix.take_cols(plan.training_cols)
    test = matrix.take_cols(plan.test_cols(matrix.n_cols))
    return training, test


def sufficient_stats(matrix: DataMatrix, plan: SplitPlan) -> StatVectors:
    """Row sums over training and test columns, plus the full-data sum."""
    plan.validate_for(matrix.n_cols)
    y = matrix.values[:, list(plan.training_cols)].sum(axis=1)
    z = matrix.values[:, list(plan.test_cols(matrix.n_cols))].sum(axis=1)
    return StatVectors(y=y, z=z, w=y + z, lambda2=plan.lambda2(matrix.n_cols))


def _round_half_even(x: float) -> int:
    return int(round(x))


def random_split(
    n_cols: int,
    lambda2: float,
    stream: RngStream,
    groups: GroupLabels | None = None,
) -> SplitPlan:
    """Draw a random training set with |T| = round(lambda2 * N).

    With group labels, the training count is apportioned to the two groups in
    proportion to their sizes (round-half-to-even on group 1, remainder to
    group 2, at least 1 per group), and each group must retain >= 2 test
    columns.  Deterministic given the stream descriptor.
    """
    if not 0.0 < lambda2 < 1.0:
        raise SplitError(f"training fraction must lie in (0, 1), got {lambda2}")
    if int(np.floor(lambda2 * n_cols)) < 1:
        raise SplitError(
            f"training fraction {lambda2} leaves no training columns out of {n_cols}"
        )
    total = _round_half_even(lambda2 * n_cols)
    if total >= n_cols:
        raise SplitError("training set would consume every column")
    rng = stream.generator()

    if groups is None:
        cols = np.sort(rng.choice(n_cols, size=total, replace=False))
        return SplitPlan(training_cols=tuple(int(c) for c in cols))

    if groups.n_cols != n_cols:
        raise SplitError(f"group labels cover {groups.n_cols} columns, expected {n_cols}")
    if total < 2:
        raise SplitError("split infeasible: need at least 1 training column per group")
    g1 = groups.group_cols(1)
    g2 = groups.group_cols(2)
    n1 = min(max(_round_half_even(total * g1.size / n_cols), 1), total - 1)
    n2 = total - n1
    if g1.size - n1 < 2 or g2.size - n2 < 2:
        raise SplitError(
            "split infeasible: each group must keep at least 2 test columns "
            f"(group sizes {g1.size}/{g2.size}, training {n1}/{n2})"
        )
    t1 = np.sort(rng.choice(g1, size=n1, replace=False))
    t2 = np.sort(rng.choice(g2, size=n2, replace=False))
    return SplitPlan(
        training_cols=tuple(int(c) for c in np.concatenate([t1, t2])),
        training_by_group=(tuple(int(c) for c in t1), tuple(int(c) for c in t2)),
    )
