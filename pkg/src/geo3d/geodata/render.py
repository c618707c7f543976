"""Schematic SVG rendering of raster grids."""

from __future__ import annotations

import io
import os

import numpy as np

from geo3d.errors import AnalysisError
from geo3d.geodata.io import _atomic_write_text
from geo3d.geodata.types import RasterGrid

_RAMP_LOW = (0, 0, 255)
_RAMP_HIGH = (255, 0, 0)


def _ramp_color(t: float) -> str:
    """Linear blue-to-red ramp, t in [0, 1]."""
    channels = (
        int(lo + (hi - lo) * t + 0.5) for lo, hi in zip(_RAMP_LOW, _RAMP_HIGH)
    )
    return "#%02x%02x%02x" % tuple(channels)


def heatmap_svg(grid: RasterGrid, cell_px: int = 10) -> str:
    """SVG heatmap text: one rectangle per cell, fill mapped linearly from
    the non-missing value range onto blue→red; missing cells transparent.

    A degenerate range (all values equal) maps every cell to the ramp
    midpoint.
    """
    missing = grid.missing_mask()
    if missing.all():
        raise AnalysisError("cannot render heatmap: all cells missing")
    valid = grid.values[~missing]
    lo, hi = float(valid.min()), float(valid.max())
    span = hi - lo

    width = grid.ncols * cell_px
    height = grid.nrows * cell_px
    out = io.StringIO()
    out.write(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
    )
    for i in range(grid.nrows):
        for j in range(grid.ncols):
            if missing[i, j]:
                fill = "none"
            else:
                t = 0.5 if span == 0 else (float(grid.values[i, j]) - lo) / span
                fill = _ramp_color(t)
            out.write(
                f'<rect x="{j * cell_px}" y="{i * cell_px}" '
                f'width="{cell_px}" height="{cell_px}" fill="{fill}"/>\n'
            )
    out.write("</svg>\n")
    return out.getvalue()


def render_heatmap(grid: RasterGrid, path: str | os.PathLike, cell_px: int = 10) -> None:
    _atomic_write_text(path, heatmap_svg(grid, cell_px))
