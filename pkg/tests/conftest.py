"""Shared fixtures: bundled datasets and synthetic-grid helpers."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from geo3d.geodata import (
    RasterGrid,
    load_address_library,
    load_network,
    load_points,
    load_raster,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def dem_grid() -> RasterGrid:
    return load_raster(FIXTURES / "dem.asc")


@pytest.fixture(scope="session")
def sample_points():
    return load_points(FIXTURES / "points.csv")


@pytest.fixture(scope="session")
def campus_network():
    return load_network(FIXTURES / "network.json")


@pytest.fixture(scope="session")
def address_library():
    return load_address_library(FIXTURES / "addresses.csv")


def grid_from_function(
    func,
    ncols: int = 16,
    nrows: int = 16,
    cellsize: float = 1.0,
    x_origin: float = 0.0,
    y_origin: float = 0.0,
    nodata_value: float = -9999.0,
) -> RasterGrid:
    """Sample func(x, y) at cell centers into a RasterGrid."""
    j = np.arange(ncols)
    i = np.arange(nrows)
    x = x_origin + (j + 0.5) * cellsize
    y = y_origin + (nrows - i - 0.5) * cellsize
    X, Y = np.meshgrid(x, y)
    return RasterGrid(
        ncols=ncols,
        nrows=nrows,
        x_origin=x_origin,
        y_origin=y_origin,
        cellsize=cellsize,
        nodata_value=nodata_value,
        values=func(X, Y),
    )
