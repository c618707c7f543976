"""Inverse-distance-weighted interpolation."""

from __future__ import annotations

import numpy as np

from geo3d import kernels
from geo3d.errors import AnalysisError
from geo3d.geodata.types import PointSet3D

# Matches the kernel's squared-distance exact-hit test (1e-12 on distance).
EXACT_HIT_DISTANCE = 1e-12


def canonical_order(points: PointSet3D) -> np.ndarray:
    """Index order sorted by (y, x).

    Point files carry no meaningful row order, so every IDW evaluation
    re-sorts into this canonical order first; estimates are then bit-identical
    under any permutation of the input rows.
    """
    return np.lexsort((points.y, points.x))


def idw_interpolate(
    points: PointSet3D,
    attr: str = "z",
    query: tuple[float, float] = (0.0, 0.0),
    power: float = 2.0,
    k_neighbors: int | None = None,
) -> float:
    """IDW estimate at one query location.

    Weights are 1/d^power over the k nearest samples by planimetric distance
    (all samples when k_neighbors is None); a query within 1e-12 of a sample
    returns that sample's value.
    """
    qx = np.array([query[0]], dtype=np.float64)
    qy = np.array([query[1]], dtype=np.float64)
    return float(idw_many(points, attr, qx, qy, power, k_neighbors)[0])


def idw_many(
    points: PointSet3D,
    attr: str,
    qx: np.ndarray,
    qy: np.ndarray,
    power: float,
    k_neighbors: int | None,
) -> np.ndarray:
    """Vectorized IDW over many query locations."""
    if len(points) < 1:
        raise AnalysisError("IDW requires at least one sample point")
    if not power > 0:
        raise AnalysisError("power must be positive")
    values = points.attribute(attr)
    k = len(points) if k_neighbors is None else int(k_neighbors)
    if k < 1:
        raise AnalysisError("k_neighbors must be positive")
    k = min(k, len(points))
    order = canonical_order(points)
    return kernels.idw_many(
        np.ascontiguousarray(points.x[order]),
        np.ascontiguousarray(points.y[order]),
        np.ascontiguousarray(values[order]),
        np.ascontiguousarray(qx, dtype=np.float64),
        np.ascontiguousarray(qy, dtype=np.float64),
        float(power),
        k,
    )
