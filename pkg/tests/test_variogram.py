"""Empirical semivariogram and theoretical models."""

from __future__ import annotations

import math

import numpy as np
import pytest

from geo3d.errors import AnalysisError
from geo3d.geodata import PointSet3D
from geo3d.stats import (
    VariogramModel,
    empirical_semivariogram,
    evaluate_model,
    fit_variogram,
)


def brute_force_bins(points, n_lags, max_lag):
    """Independent pair enumeration for the Matheron estimator."""
    width = max_lag / n_lags
    sums = [0.0] * n_lags
    counts = [0] * n_lags
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(
                points.x[j] - points.x[i], points.y[j] - points.y[i]
            )
            if d <= 0 or d > max_lag:
                continue
            b = math.ceil(d / width) - 1
            if b >= n_lags:
                continue
            sums[b] += (points.z[j] - points.z[i]) ** 2
            counts[b] += 1
    return [
        (s / (2 * c) if c else float("nan"), c) for s, c in zip(sums, counts)
    ]


def test_single_pair_definition():
    pts = PointSet3D(x=[0.0, 1.0], y=[0.0, 0.0], z=[3.0, 7.0])
    bins = empirical_semivariogram(pts, n_lags=1, max_lag=1.0)
    assert bins[0].gamma == pytest.approx(8.0)
    assert bins[0].pair_count == 1


def test_constant_field_zero_gamma(sample_points):
    pts = PointSet3D(x=sample_points.x, y=sample_points.y, z=np.full(50, 2.5))
    bins = empirical_semivariogram(pts, n_lags=6, max_lag=10.0)
    for b in bins:
        if b.pair_count:
            assert b.gamma == 0.0


def test_collinear_alternating_values():
    # values (0,1,0,1) on unit-spaced collinear points: lag-1 bin holds
    # pairs (0,1),(1,0),(0,1) so gamma = 3/(2*3) = 0.5
    pts = PointSet3D(x=[0.0, 1.0, 2.0, 3.0], y=[0.0] * 4, z=[0.0, 1.0, 0.0, 1.0])
    bins = empirical_semivariogram(pts, n_lags=3, max_lag=3.0)
    assert bins[0].pair_count == 3
    assert bins[0].gamma == pytest.approx(0.5)
    # lag-2 pairs: (0,0),(1,1) -> gamma 0; lag-3 pair: (0,1) -> 1/2
    assert bins[1].gamma == pytest.approx(0.0)
    assert bins[2].gamma == pytest.approx(0.5)


def test_matches_brute_force(sample_points):
    bins = empirical_semivariogram(sample_points, n_lags=8, max_lag=9.0)
    oracle = brute_force_bins(sample_points, 8, 9.0)
    for got, (gamma, count) in zip(bins, oracle):
        assert got.pair_count == count
        if count:
            assert got.gamma == pytest.approx(gamma, rel=1e-12)
        else:
            assert math.isnan(got.gamma)


def test_gamma_nonnegative_and_value_scaling(sample_points):
    bins = empirical_semivariogram(sample_points, n_lags=10, max_lag=10.0)
    doubled = PointSet3D(
        x=sample_points.x, y=sample_points.y, z=2.0 * sample_points.z
    )
    bins2 = empirical_semivariogram(doubled, n_lags=10, max_lag=10.0)
    for b, b2 in zip(bins, bins2):
        if b.pair_count:
            assert b.gamma >= 0.0
            assert b2.gamma == pytest.approx(4.0 * b.gamma, rel=1e-12)


def test_empty_bin_reported():
    pts = PointSet3D(x=[0.0, 1.0, 10.0], y=[0.0] * 3, z=[1.0, 2.0, 3.0])
    bins = empirical_semivariogram(pts, n_lags=10, max_lag=10.0)
    assert bins[4].pair_count == 0
    assert math.isnan(bins[4].gamma)


def test_pairs_beyond_max_lag_excluded():
    pts = PointSet3D(x=[0.0, 1.0, 100.0], y=[0.0] * 3, z=[0.0, 1.0, 50.0])
    bins = empirical_semivariogram(pts, n_lags=2, max_lag=2.0)
    assert sum(b.pair_count for b in bins) == 1


def test_nonpositive_max_lag_rejected():
    pts = PointSet3D(x=[0.0, 1.0], y=[0.0, 0.0], z=[0.0, 1.0])
    with pytest.raises(AnalysisError, match="max_lag"):
        empirical_semivariogram(pts, n_lags=2, max_lag=0.0)


class TestModels:
    def test_gamma_zero_at_origin(self):
        for kind in ("spherical", "exponential", "gaussian", "nugget"):
            model = VariogramModel(kind=kind, nugget=0.5, sill=2.0, range=3.0)
            assert evaluate_model(model, 0.0) == 0.0

    def test_spherical_reaches_sill_at_range(self):
        model = VariogramModel(kind="spherical", nugget=0.5, sill=2.0, range=3.0)
        assert evaluate_model(model, 3.0) == pytest.approx(2.0)
        assert evaluate_model(model, 10.0) == pytest.approx(2.0)
        # closed form inside the range: c0 + c1*(1.5u - 0.5u^3) at u = 1/2
        expected = 0.5 + 1.5 * (1.5 * 0.5 - 0.5 * 0.125)
        assert evaluate_model(model, 1.5) == pytest.approx(expected, rel=1e-12)

    def test_exponential_practical_range(self):
        model = VariogramModel(kind="exponential", nugget=0.0, sill=1.0, range=2.0)
        assert evaluate_model(model, 2.0) == pytest.approx(1.0 - math.exp(-3.0))
        assert evaluate_model(model, 200.0) == pytest.approx(1.0, abs=1e-9)

    def test_gaussian_closed_form(self):
        model = VariogramModel(kind="gaussian", nugget=0.25, sill=1.25, range=4.0)
        h = 2.0
        expected = 0.25 + 1.0 * (1.0 - math.exp(-3.0 * h * h / 16.0))
        assert evaluate_model(model, h) == pytest.approx(expected, rel=1e-12)

    def test_nugget_model_steps_to_sill(self):
        model = VariogramModel(kind="nugget", nugget=1.0, sill=1.0, range=1.0)
        assert evaluate_model(model, 1e-9) == 1.0
        assert evaluate_model(model, 50.0) == 1.0

    def test_invalid_parameters_rejected(self):
        with pytest.raises(AnalysisError):
            VariogramModel(kind="spherical", nugget=-0.1, sill=1.0, range=1.0)
        with pytest.raises(AnalysisError):
            VariogramModel(kind="spherical", nugget=2.0, sill=1.0, range=1.0)
        with pytest.raises(AnalysisError):
            VariogramModel(kind="spherical", nugget=0.0, sill=1.0, range=0.0)
        with pytest.raises(AnalysisError):
            VariogramModel(kind="cubic", nugget=0.0, sill=1.0, range=1.0)


class TestFit:
    def test_recovers_planted_spherical(self):
        planted = VariogramModel(kind="spherical", nugget=0.2, sill=1.4, range=5.0)
        rng = np.random.default_rng(31)
        x = rng.uniform(0, 20, 120)
        y = rng.uniform(0, 20, 120)
        pts = PointSet3D(x=x, y=y, z=rng.standard_normal(120))
        bins = empirical_semivariogram(pts, n_lags=12, max_lag=12.0)
        synthetic = [
            type(b)(b.lag_center, float(evaluate_model(planted, b.lag_center)), b.pair_count)
            for b in bins
            if b.pair_count
        ]
        fitted = fit_variogram(synthetic, "spherical")
        assert fitted.nugget == pytest.approx(planted.nugget, abs=1e-4)
        assert fitted.sill == pytest.approx(planted.sill, abs=1e-4)
        assert fitted.range == pytest.approx(planted.range, abs=1e-3)

    def test_nugget_fit_is_weighted_mean(self):
        from geo3d.stats import VariogramBin

        bins = [
            VariogramBin(0.5, 2.0, 1),
            VariogramBin(1.5, 4.0, 3),
        ]
        fitted = fit_variogram(bins, "nugget")
        assert fitted.sill == pytest.approx((2.0 * 1 + 4.0 * 3) / 4.0)

    def test_too_few_bins_rejected(self):
        from geo3d.stats import VariogramBin

        with pytest.raises(AnalysisError, match="non-empty"):
            fit_variogram([VariogramBin(0.5, 1.0, 4)], "spherical")
