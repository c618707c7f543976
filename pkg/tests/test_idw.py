"""Inverse-distance weighting."""

from __future__ import annotations

import numpy as np
import pytest

from geo3d.errors import AnalysisError
from geo3d.geodata import GridSpec, PointSet3D
from geo3d.stats import idw_grid, idw_interpolate


def test_exact_hit_returns_sample_value():
    pts = PointSet3D(x=[0.0, 4.0], y=[0.0, 0.0], z=[7.5, 1.0])
    assert idw_interpolate(pts, query=(0.0, 0.0)) == 7.5


def test_equidistant_pair_returns_mean():
    pts = PointSet3D(x=[-1.0, 1.0], y=[0.0, 0.0], z=[0.0, 10.0])
    assert idw_interpolate(pts, query=(0.0, 0.0), power=2.0) == 5.0


def test_hand_computed_weighted_mean():
    # samples z=(1,2,4) at distances (1,2,4) from origin, power 1:
    # (1/1 + 2/2 + 4/4) / (1 + 1/2 + 1/4) = 3 / 1.75
    pts = PointSet3D(x=[1.0, 2.0, 4.0], y=[0.0, 0.0, 0.0], z=[1.0, 2.0, 4.0])
    out = idw_interpolate(pts, query=(0.0, 0.0), power=1.0)
    assert out == pytest.approx(3.0 / 1.75, rel=1e-12)


def test_output_within_sample_bounds():
    rng = np.random.default_rng(21)
    pts = PointSet3D(
        x=rng.uniform(0, 10, 40), y=rng.uniform(0, 10, 40), z=rng.uniform(-3, 9, 40)
    )
    lo, hi = pts.z.min(), pts.z.max()
    for _ in range(100):
        q = (rng.uniform(0, 10), rng.uniform(0, 10))
        est = idw_interpolate(pts, query=q, power=2.0)
        assert lo <= est <= hi


def test_permutation_bit_invariance():
    rng = np.random.default_rng(22)
    x = rng.uniform(0, 10, 25)
    y = rng.uniform(0, 10, 25)
    z = rng.uniform(0, 5, 25)
    pts = PointSet3D(x=x, y=y, z=z)
    perm = rng.permutation(25)
    shuffled = PointSet3D(x=x[perm], y=y[perm], z=z[perm])
    for k in (None, 5):
        for _ in range(20):
            q = (rng.uniform(0, 10), rng.uniform(0, 10))
            a = idw_interpolate(pts, query=q, power=2.0, k_neighbors=k)
            b = idw_interpolate(shuffled, query=q, power=2.0, k_neighbors=k)
            assert a == b  # bit-identical, not just close


def test_value_scaling_equivariance():
    rng = np.random.default_rng(23)
    pts = PointSet3D(
        x=rng.uniform(0, 10, 15), y=rng.uniform(0, 10, 15), z=rng.uniform(1, 2, 15)
    )
    scaled = PointSet3D(x=pts.x, y=pts.y, z=3.0 * pts.z)
    q = (4.2, 5.1)
    assert idw_interpolate(scaled, query=q) == pytest.approx(
        3.0 * idw_interpolate(pts, query=q), rel=1e-12
    )


def test_k_neighbors_restricts_support():
    # query next to samples A and B; far sample C is excluded with k=2
    pts = PointSet3D(x=[0.0, 1.0, 100.0], y=[0.0, 0.0, 0.0], z=[2.0, 4.0, 1000.0])
    full = idw_interpolate(pts, query=(0.5, 0.0), power=2.0)
    near = idw_interpolate(pts, query=(0.5, 0.0), power=2.0, k_neighbors=2)
    assert near == pytest.approx(3.0, rel=1e-12)
    assert full > near


def test_one_point_degenerate_grid():
    pts = PointSet3D(x=[3.0], y=[4.0], z=[9.25])
    spec = GridSpec(x_origin=0, y_origin=0, cellsize=1.0, ncols=4, nrows=3)
    grid = idw_grid(pts, spec)
    assert np.all(grid.values == 9.25)


def test_grid_values_bounded(sample_points):
    spec = GridSpec(x_origin=0, y_origin=0, cellsize=1.0, ncols=10, nrows=10)
    grid = idw_grid(sample_points, spec, power=2.0)
    z = sample_points.z
    assert grid.values.min() >= z.min() - 1e-12
    assert grid.values.max() <= z.max() + 1e-12


def test_empty_point_set_rejected():
    pts = PointSet3D(x=[1.0], y=[1.0], z=[1.0])
    with pytest.raises(AnalysisError, match="power"):
        idw_interpolate(pts, query=(0.0, 0.0), power=0.0)


def test_grid_row_zero_is_north(sample_points):
    # cell (0, 0) center must be the north-west corner of the grid extent
    spec = GridSpec(x_origin=0, y_origin=0, cellsize=2.0, ncols=3, nrows=3)
    grid = idw_grid(sample_points, spec)
    direct = idw_interpolate(sample_points, query=(1.0, 5.0))
    assert grid.values[0, 0] == direct
