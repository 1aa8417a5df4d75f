"""Closed-form power functions and the oracle-advantage boundary."""

import numpy as np
import pytest

from splitpval.power import average_power, power_oracle, power_simple, region_boundary

from oracles import FROZEN


class TestPowerSimple:
    def test_size_at_null(self):
        for eta in (0.001, 0.05, 0.3):
            assert power_simple(0.0, eta) == pytest.approx(eta, abs=1e-12)

    def test_frozen_value(self):
        assert power_simple(-1.0, 0.05) == pytest.approx(FROZEN["power_simple(-1,0.05)"], abs=1e-9)
        assert power_simple(-1.0, 0.05) == pytest.approx(0.1700, abs=1e-3)

    def test_symmetric_in_location(self):
        for mu in (0.3, 1.0, 2.7):
            assert power_simple(mu, 0.05) == pytest.approx(power_simple(-mu, 0.05), abs=1e-14)

    def test_eta_domain(self):
        with pytest.raises(ValueError):
            power_simple(1.0, 0.0)


class TestPowerOracle:
    def test_size_at_null(self):
        for lam2 in (0.0, 0.3, 0.9):
            assert power_oracle(0.0, lam2, 0.05) == pytest.approx(0.05, abs=1e-12)

    def test_frozen_values(self):
        assert power_oracle(-1.0, 0.0, 0.05) == pytest.approx(
            FROZEN["power_oracle(-1,0,0.05)"], abs=1e-9
        )
        assert power_oracle(-1.0, 0.4, 0.05) == pytest.approx(
            FROZEN["power_oracle(-1,0.4,0.05)"], abs=1e-9
        )
        assert power_oracle(-1.0, 0.4, 0.05) < power_oracle(-1.0, 0.0, 0.05)

    def test_dominates_simple_at_zero_training_fraction(self):
        for mu in (-2.5, -1.0, -0.2, 0.4, 1.7):
            assert power_oracle(mu, 0.0, 0.05) > power_simple(mu, 0.05)

    def test_strictly_decreasing_in_training_fraction(self):
        grid = np.linspace(0.0, 0.95, 30)
        vals = [power_oracle(-0.8, l2, 0.01) for l2 in grid]
        assert np.all(np.diff(vals) < 0)

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            power_oracle(1.0, 1.0, 0.05)
        with pytest.raises(ValueError):
            power_oracle(1.0, 0.5, 1.0)


class TestAveragePower:
    def test_single_alternative(self):
        mu = np.array([0.7])
        assert average_power(mu, 0.1, 0.05, [0], "oracle") == pytest.approx(
            power_oracle(0.7, 0.1, 0.05)
        )

    def test_identical_locations(self):
        mu = np.full(5, -1.2)
        assert average_power(mu, 0.0, 0.05, np.arange(5), "simple") == pytest.approx(
            power_simple(-1.2, 0.05)
        )

    def test_symmetric_pair_oracle(self):
        mu = np.array([-1.0, 1.0])
        got = average_power(mu, 0.0, 0.05, [0, 1], "oracle")
        assert got == pytest.approx(FROZEN["power_oracle(-1,0,0.05)"], abs=1e-9)

    def test_empty_index_rejected(self):
        with pytest.raises(ValueError):
            average_power(np.array([1.0]), 0.0, 0.05, [], "simple")


class TestRegionBoundary:
    def test_positive_where_oracle_dominates(self):
        out = region_boundary(np.array([-1.0, 0.5, 2.0]), 0.05)
        assert np.all(out > 0)

    def test_bisection_matches_fine_grid_scan(self):
        eta = 0.01
        mu = -1.0
        boundary = region_boundary(np.array([mu]), eta)[0]
        target = power_simple(mu, eta)
        grid = np.linspace(0.0, 1.0 - 1e-9, 50_001)
        dominates = np.array([power_oracle(mu, l2, eta) > target for l2 in grid])
        scan = grid[np.argmin(dominates)] if not dominates.all() else 1.0
        assert boundary == pytest.approx(scan, abs=5e-5)

    def test_consistency_with_direct_evaluation(self):
        eta = 0.001
        mus = np.array([-2.0, -0.7, 0.3, 1.1])
        stars = region_boundary(mus, eta)
        for mu, star in zip(mus, stars):
            target = power_simple(mu, eta)
            assert power_oracle(mu, max(star - 1e-4, 0.0), eta) > target
            assert power_oracle(mu, min(star + 1e-4, 1 - 1e-9), eta) <= target

    def test_larger_boundary_near_zero_location(self):
        stars = region_boundary(np.array([-0.2, -1.0, -2.5]), 0.05)
        assert stars[0] > stars[1] > stars[2]

    def test_zero_location_rejected(self):
        with pytest.raises(ValueError):
            region_boundary(np.array([0.0, 1.0]), 0.05)
