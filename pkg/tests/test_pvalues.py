"""Simple, oracle, and compound p-value families."""

import numpy as np
import pytest

from splitpval.datamodel import DataMatrix, GroupLabels
from splitpval.estimators import ShrinkageWeights, oracle_weights
from splitpval.numerics import RngStream, draw_normal
from splitpval.pvalues import (
    PValueSet,
    compound_p,
    compound_p_standardized,
    oracle_p,
    simple_p,
    simple_t_p,
    t_to_z,
    two_sample_t,
)

from oracles import FROZEN, ks_statistic


class TestSimpleP:
    def test_center_of_null(self):
        assert simple_p(np.array([0.0])).p[0] == 1.0

    def test_two_sided_value(self):
        p = simple_p(np.array([1.959964])).p[0]
        assert p == pytest.approx(2 * (1 - FROZEN["phi(1.959964)"]), abs=1e-12)
        assert p == pytest.approx(0.05, abs=1e-5)

    def test_tail_limit(self):
        assert simple_p(np.array([45.0])).p[0] == 0.0
        assert simple_p(np.array([-45.0])).p[0] == 0.0

    def test_kind_tag(self):
        assert simple_p(np.zeros(3)).kind == "simple"


class TestCompoundP:
    def test_half_weight_reduces_to_simple_exactly(self):
        z = draw_normal(RngStream(3), 0.0, 0.8, 500)
        lam2 = 0.36
        h = ShrinkageWeights(np.full(500, 0.5))
        compound = compound_p(z, h, lam2)
        simple = simple_p(z / np.sqrt(1 - lam2))
        np.testing.assert_array_equal(compound.p, simple.p)

    def test_zero_weight_is_upper_tail_only(self):
        h = ShrinkageWeights(np.array([0.0]))
        p = compound_p(np.array([-1.5]), h, 0.0).p[0]
        assert p == pytest.approx(FROZEN["phi(1.5)"], abs=1e-12)
        assert p == pytest.approx(0.93319, abs=1e-5)

    def test_interior_weight_hand_example(self):
        h = ShrinkageWeights(np.array([0.9]))
        p = compound_p(np.array([-1.5]), h, 0.0).p[0]
        assert p == pytest.approx(FROZEN["phi(-1.5)"] / 0.9, abs=1e-12)
        assert p == pytest.approx(0.07423, abs=1e-5)

    def test_unit_weight_is_lower_tail_only(self):
        h = ShrinkageWeights(np.array([1.0]))
        p = compound_p(np.array([1.959964]), h, 0.0).p[0]
        assert p == pytest.approx(FROZEN["phi(1.959964)"], abs=1e-9)

    def test_matches_oracle_when_weights_agree(self):
        mu = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
        z = draw_normal(RngStream(4), 0.0, 1.0, 5)
        via_weights = compound_p(z, oracle_weights(mu), 0.2)
        via_oracle = oracle_p(z, mu, 0.2)
        np.testing.assert_array_equal(via_weights.p, via_oracle.p)

    def test_values_never_exceed_one(self):
        gen = RngStream(5).generator()
        z = gen.standard_normal(10_000)
        h = ShrinkageWeights(gen.random(10_000))
        p = compound_p(z, h, 0.3).p
        assert p.max() <= 1.0 and p.min() >= 0.0

    def test_extreme_statistics_with_boundary_weights(self):
        # Underflowed tail mass over a zero weight must still map to the
        # other tail's ratio, not NaN.
        h = ShrinkageWeights(np.array([0.0, 1.0]))
        p = compound_p(np.array([-41.0, 41.0]), h, 0.0).p
        assert np.all(np.isfinite(p))
        np.testing.assert_array_equal(p, [1.0, 1.0])

    def test_standardized_mode_skips_rescaling(self):
        z = np.array([-1.5, 0.0, 2.0])
        h = ShrinkageWeights(np.array([0.3, 0.5, 0.7]))
        np.testing.assert_array_equal(
            compound_p_standardized(z, h).p, compound_p(z, h, 0.0).p
        )
        assert compound_p_standardized(z, h).lambda2 is None

    def test_lambda2_domain(self):
        h = ShrinkageWeights(np.array([0.5]))
        with pytest.raises(ValueError):
            compound_p(np.array([1.0]), h, 1.0)


class TestOracleP:
    def test_boundary_location_uses_lower_tail(self):
        # Indicator is 1 at mu = 0, so p = Phi(z); check at z = -1.5.
        p = oracle_p(np.array([-1.5]), np.array([0.0]), 0.0).p[0]
        assert p == pytest.approx(FROZEN["phi(-1.5)"], abs=1e-12)

    def test_positive_location_uses_upper_tail(self):
        p = oracle_p(np.array([2.0]), np.array([1.0]), 0.0).p[0]
        assert p == pytest.approx(FROZEN["1-phi(2)"], abs=1e-12)
        assert p == pytest.approx(0.02275, abs=1e-5)

    def test_paper_sized_cutoff(self):
        p = oracle_p(np.array([-1.645]), np.array([-1.0]), 0.0).p[0]
        assert p == pytest.approx(FROZEN["phi(-1.645)"], abs=1e-12)
        assert p == pytest.approx(0.05, abs=1e-3)

    def test_null_uniformity_single_draw(self):
        # All-null standardized statistics with arbitrary fixed weights stay
        # uniform; check with a Kolmogorov statistic at the 1% critical value.
        m = 5000
        gen = RngStream(6).generator()
        z = gen.standard_normal(m)
        h = ShrinkageWeights(gen.random(m))
        p = compound_p_standardized(z, h).p
        assert ks_statistic(p) < 1.6276 / np.sqrt(m)

    def test_null_independence_tracked_pairs(self):
        # Correlation between two fixed null hypotheses' compound p-values
        # across replicates stays within Monte Carlo noise.
        reps, m = 2000, 40
        pvals = np.empty((reps, m))
        for k in range(reps):
            gen = RngStream(7, k, 0).generator()
            z = gen.standard_normal(m)
            h = ShrinkageWeights(gen.random(m))
            pvals[k] = compound_p_standardized(z, h).p
        bound = 4 / np.sqrt(reps)
        for a, b in ((0, 1), (2, 3), (10, 30)):
            assert abs(np.corrcoef(pvals[:, a], pvals[:, b])[0, 1]) < bound


class TestTwoSampleT:
    def matrix(self, rows):
        return DataMatrix(np.asarray(rows, dtype=float))

    def test_equal_means_give_zero(self):
        m = self.matrix([[1.0, 2.0, 1.0, 2.0]])
        res = two_sample_t(m, [0, 1], [2, 3])
        assert res.t[0] == 0.0
        assert not res.degenerate[0]

    def test_degenerate_row_flagged(self):
        m = self.matrix([[0.0, 0.0, 1.0, 1.0]])
        res = two_sample_t(m, [0, 1], [2, 3])
        assert res.degenerate[0]
        assert res.t[0] == 0.0

    def test_hand_worked_example(self):
        m = self.matrix([[1.0, 2.0, 3.0, 3.0, 4.0, 5.0]])
        res = two_sample_t(m, [0, 1, 2], [3, 4, 5])
        assert res.df == 4
        assert res.t[0] == pytest.approx(2.0 / np.sqrt(2.0 / 3.0), abs=1e-12)

    def test_insufficient_columns(self):
        m = self.matrix([[1.0, 2.0, 3.0]])
        with pytest.raises(ValueError):
            two_sample_t(m, [0], [1, 2])

    def test_overlapping_groups_rejected(self):
        m = self.matrix([[1.0, 2.0, 3.0, 4.0]])
        with pytest.raises(ValueError):
            two_sample_t(m, [0, 1], [1, 2])


class TestTToZ:
    def test_zero_maps_to_zero(self):
        assert t_to_z(np.array([0.0]), 5).z[0] == 0.0

    def test_chained_oracle_value(self):
        z = t_to_z(np.array([2.0]), 100).z[0]
        assert z == pytest.approx(FROZEN["z_from_t(2,100)"], abs=1e-9)

    def test_monotone(self):
        t = np.linspace(-30, 30, 601)
        z = t_to_z(t, 9).z
        assert np.all(np.diff(z) > 0)

    def test_antisymmetric(self):
        t = np.linspace(0.1, 20, 50)
        np.testing.assert_allclose(t_to_z(-t, 7).z, -t_to_z(t, 7).z, atol=0)

    def test_finite_for_huge_statistics(self):
        z = t_to_z(np.array([1e6, -1e6]), 2).z
        assert np.all(np.isfinite(z))


class TestSimpleTP:
    def two_group_matrix(self, rows):
        m = DataMatrix(np.asarray(rows, dtype=float))
        n = m.n_cols
        labels = GroupLabels(np.array([1] * (n // 2) + [2] * (n - n // 2)))
        return m, labels

    def test_null_center(self):
        m, labels = self.two_group_matrix([[1.0, 2.0, 1.0, 2.0]])
        assert simple_t_p(m, labels).p[0] == 1.0

    def test_sign_symmetric_pairs_equal(self):
        m, labels = self.two_group_matrix([[0.0, 1.0, 2.0, 3.0], [2.0, 3.0, 0.0, 1.0]])
        p = simple_t_p(m, labels).p
        assert p[0] == pytest.approx(p[1], abs=1e-15)

    def test_frozen_value_for_t2_df100(self):
        # 2 * (1 - T_100(2)) computed via the integration oracle.
        assert FROZEN["simple_t_p(2,100)"] == pytest.approx(
            2 * (1 - FROZEN["t_cdf(2,100)"]), abs=1e-15
        )
        from splitpval.numerics import student_t_cdf

        assert 2 * (1 - student_t_cdf(2.0, 100)) == pytest.approx(
            FROZEN["simple_t_p(2,100)"], abs=1e-10
        )

    def test_degenerate_rows_get_p_one(self):
        m, labels = self.two_group_matrix([[1.0, 1.0, 2.0, 2.0]])
        assert simple_t_p(m, labels).p[0] == 1.0


class TestPValueSet:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            PValueSet(p=np.array([1.2]), kind="simple")
        with pytest.raises(ValueError):
            PValueSet(p=np.array([0.5]), kind="banana")
