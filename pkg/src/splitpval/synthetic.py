"""Synthetic two-group expression-style matrices for demos and pipeline tests.

Generates an M x N matrix shaped like a two-condition microarray study:
unit-variance Gaussian noise per entry, with a chosen set of rows shifted in
the second group.  The shift signs are deliberately asymmetric (most signals
positive) since that is where sign-informed tail weighting pays off.
"""

from __future__ import annotations

import numpy as np

from .datamodel import DataMatrix, GroupLabels
from .numerics import RngStream

__all__ = ["two_group_dataset"]


def two_group_dataset(
    n_rows: int = 6033,
    n_group1: int = 50,
    n_group2: int = 52,
    n_up: int = 250,
    n_down: int = 50,
    effect_low: float = 0.5,
    effect_high: float = 1.2,
    seed: int = 0,
) -> tuple[DataMatrix, GroupLabels, np.ndarray]:
    """Build (matrix, labels, true_shift) with ``n_up + n_down`` shifted rows.

    Shift magnitudes are uniform on [effect_low, effect_high]; ``n_up`` rows
    shift the second group upward, ``n_down`` downward.  The shifted rows are
    scattered across the matrix by a seeded permutation, and ``true_shift``
    records the per-row ground truth (0 for null rows).
    """
    if n_up + n_down > n_rows:
        raise ValueError("more shifted rows than rows")
    n_cols = n_group1 + n_group2
    rng = RngStream(seed, 0, 0).generator()
    values = rng.standard_normal((n_rows, n_cols))

    shift = np.zeros(n_rows)
    which = rng.permutation(n_rows)[: n_up + n_down]
    magnitudes = rng.uniform(effect_low, effect_high, size=n_up + n_down)
    signs = np.concatenate([np.ones(n_up), -np.ones(n_down)])
    shift[which] = signs * magnitudes
    values[:, n_group1:] += shift[:, None]

    matrix = DataMatrix(
        values,
        row_ids=tuple(f"g{i + 1}" for i in range(n_rows)),
        col_ids=tuple(f"s{j + 1}" for j in range(n_cols)),
    )
    labels = GroupLabels(np.concatenate([np.ones(n_group1, dtype=int), np.full(n_group2, 2)]))
    return matrix, labels, shift
