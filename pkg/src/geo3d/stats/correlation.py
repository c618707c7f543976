"""Pearson correlation between point attributes."""

from __future__ import annotations

import numpy as np

from geo3d.errors import AnalysisError
from geo3d.geodata.types import PointSet3D


def pearson(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson product-moment correlation of two equal-length columns.

    Computed as S_ab / sqrt(S_aa * S_bb) on centered columns; identical
    columns short-circuit to exactly 1.0 so the unit diagonal is exact.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise AnalysisError("correlation requires equal-length 1-d columns")
    if a.shape[0] < 2:
        raise AnalysisError("correlation requires at least 2 points")
    if np.array_equal(a, b):
        if np.all(a == a[0]):
            raise AnalysisError("zero-variance column")
        return 1.0
    da = a - a.mean()
    db = b - b.mean()
    saa = float(da @ da)
    sbb = float(db @ db)
    if saa == 0.0 or sbb == 0.0:
        raise AnalysisError("zero-variance column")
    return float((da @ db) / np.sqrt(saa * sbb))


def correlation_matrix(points: PointSet3D, attrs: list[str]) -> np.ndarray:
    """Symmetric correlation matrix over the named attributes.

    Each column must exist and have nonzero variance; offending columns are
    reported by name.
    """
    if len(points) < 2:
        raise AnalysisError("correlation requires at least 2 points")
    if not attrs:
        raise AnalysisError("no attributes named")
    columns = []
    for name in attrs:
        col = points.attribute(name)
        if np.all(col == col[0]):
            raise AnalysisError(f"attribute '{name}' has zero variance")
        columns.append(col)
    n = len(attrs)
    out = np.eye(n, dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            rij = pearson(columns[i], columns[j])
            out[i, j] = rij
            out[j, i] = rij
    return out
