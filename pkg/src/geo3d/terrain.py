"""Topographic factors from a DEM: slope, aspect, plane and profile curvature.

All four factors derive from the first and second partials (p, q, r, s, t) of
the height surface, estimated per cell by second-order central differences
over the 3x3 neighborhood.  Border cells and cells with a missing neighbor
carry no derivatives and propagate nodata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geo3d import kernels
from geo3d.errors import AnalysisError
from geo3d.geodata.types import RasterGrid


@dataclass(frozen=True)
class SurfaceDerivatives:
    """First and second partials of the height surface at one cell."""

    p: float
    q: float
    r: float
    s: float
    t: float


@dataclass(frozen=True)
class TerrainOptions:
    """Degenerate-cell policy.

    A cell is flat when p**2 + q**2 < curvature_flat_epsilon; flat cells get
    the aspect sentinel and zero curvature, because the aspect and curvature
    formulas are 0/0 there.
    """

    aspect_flat_sentinel: float = -1.0
    curvature_flat_epsilon: float = 1e-12

    def __post_init__(self) -> None:
        if self.curvature_flat_epsilon < 0:
            raise AnalysisError("curvature_flat_epsilon must be nonnegative")


DEFAULT_OPTIONS = TerrainOptions()


def _derivative_fields(grid: RasterGrid):
    return kernels.derivative_grids(grid.values, grid.missing_mask(), grid.cellsize)


def surface_derivatives(grid: RasterGrid, row: int, col: int) -> SurfaceDerivatives | None:
    """Derivatives at one cell, or None when the 3x3 stencil does not fit
    (border cell, or any neighbor missing)."""
    if not (0 <= row < grid.nrows and 0 <= col < grid.ncols):
        raise AnalysisError(f"cell ({row}, {col}) out of bounds")
    p, q, r, s, t, ok = _derivative_fields(grid)
    if not ok[row, col]:
        return None
    return SurfaceDerivatives(
        p=float(p[row, col]),
        q=float(q[row, col]),
        r=float(r[row, col]),
        s=float(s[row, col]),
        t=float(t[row, col]),
    )


def _factor_grid(grid: RasterGrid, compute, options: TerrainOptions) -> RasterGrid:
    p, q, r, s, t, ok = _derivative_fields(grid)
    out = np.full((grid.nrows, grid.ncols), grid.nodata_value, dtype=np.float64)
    rows, cols = np.nonzero(ok)
    for i, j in zip(rows, cols):
        out[i, j] = compute(
            float(p[i, j]), float(q[i, j]), float(r[i, j]),
            float(s[i, j]), float(t[i, j]), options,
        )
    return grid.with_values(out)


def _slope_cell(p: float, q: float, r: float, s: float, t: float, options: TerrainOptions) -> float:
    return math.degrees(math.atan(math.hypot(p, q)))


def _aspect_cell(p: float, q: float, r: float, s: float, t: float, options: TerrainOptions) -> float:
    if p * p + q * q < options.curvature_flat_epsilon:
        return options.aspect_flat_sentinel
    return (270.0 - math.degrees(math.atan2(q, p))) % 360.0


def _plane_curv_cell(p: float, q: float, r: float, s: float, t: float, options: TerrainOptions) -> float:
    g2 = p * p + q * q
    if g2 < options.curvature_flat_epsilon:
        return 0.0
    return -(q * q * r - 2.0 * p * q * s + p * p * t) / g2 ** 1.5


def _profile_curv_cell(p: float, q: float, r: float, s: float, t: float, options: TerrainOptions) -> float:
    g2 = p * p + q * q
    if g2 < options.curvature_flat_epsilon:
        return 0.0
    return -(p * p * r + 2.0 * p * q * s + q * q * t) / (g2 * (1.0 + g2) ** 1.5)


def slope(grid: RasterGrid, options: TerrainOptions = DEFAULT_OPTIONS) -> RasterGrid:
    """Gradient grid in degrees: beta = arctan(sqrt(p^2 + q^2))."""
    return _factor_grid(grid, _slope_cell, options)


def aspect(grid: RasterGrid, options: TerrainOptions = DEFAULT_OPTIONS) -> RasterGrid:
    """Slope-aspect grid in degrees in [0, 360), measured clockwise from
    north; flat cells get the sentinel."""
    return _factor_grid(grid, _aspect_cell, options)


def plane_curvature(grid: RasterGrid, options: TerrainOptions = DEFAULT_OPTIONS) -> RasterGrid:
    """Plane (contour) curvature grid:
    C_c = -(q^2 r - 2pqs + p^2 t) / (p^2 + q^2)^1.5."""
    return _factor_grid(grid, _plane_curv_cell, options)


def profile_curvature(grid: RasterGrid, options: TerrainOptions = DEFAULT_OPTIONS) -> RasterGrid:
    """Profile (vertical) curvature grid:
    C_p = -(p^2 r + 2pqs + q^2 t) / ((p^2 + q^2) (1 + p^2 + q^2)^1.5)."""
    return _factor_grid(grid, _profile_curv_cell, options)
