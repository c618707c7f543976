"""Gridded interpolation surfaces from scattered points."""

from __future__ import annotations

import numpy as np

from geo3d.errors import AnalysisError
from geo3d.geodata.types import GridSpec, PointSet3D, RasterGrid
from geo3d.stats.idw import idw_many
from geo3d.stats.kriging import KrigingSystem
from geo3d.stats.variogram import VariogramModel


def idw_grid(
    points: PointSet3D,
    spec: GridSpec,
    attr: str = "z",
    power: float = 2.0,
    k_neighbors: int | None = None,
) -> RasterGrid:
    """IDW estimates at every cell center."""
    xs = spec.x_centers()
    ys = spec.y_centers()
    qx = np.tile(xs, spec.nrows)
    qy = np.repeat(ys, spec.ncols)
    values = idw_many(points, attr, qx, qy, power, k_neighbors)
    return RasterGrid.from_spec(spec, values.reshape(spec.nrows, spec.ncols))


def kriging_grid(
    points: PointSet3D,
    spec: GridSpec,
    model: VariogramModel,
    attr: str = "z",
) -> tuple[RasterGrid, RasterGrid]:
    """Ordinary-kriging estimates and variances at every cell center."""
    system = KrigingSystem(points, attr, model)
    xs = spec.x_centers()
    ys = spec.y_centers()
    estimates = np.empty((spec.nrows, spec.ncols), dtype=np.float64)
    variances = np.empty_like(estimates)
    for i in range(spec.nrows):
        qy = np.full(spec.ncols, ys[i])
        est, var = system.solve_many(xs, qy)
        estimates[i] = est
        variances[i] = var
    return (
        RasterGrid.from_spec(spec, estimates),
        RasterGrid.from_spec(spec, variances),
    )


def interpolate_grid(
    points: PointSet3D,
    attr: str,
    method: str,
    spec: GridSpec,
    power: float = 2.0,
    k_neighbors: int | None = None,
    model: VariogramModel | None = None,
) -> RasterGrid:
    """Dispatch to IDW or kriging over a grid spec."""
    if method == "idw":
        return idw_grid(points, spec, attr=attr, power=power, k_neighbors=k_neighbors)
    if method == "kriging":
        if model is None:
            raise AnalysisError("kriging requires a variogram model")
        return kriging_grid(points, spec, model, attr=attr)[0]
    raise AnalysisError(f"unknown interpolation method '{method}'")
