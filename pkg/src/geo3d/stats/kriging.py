"""Ordinary kriging with a global neighborhood.

The (n+1)x(n+1) system [Gamma 1; 1^T 0] [w; mu] = [gamma0; 1] is factored
once per point set and back-substituted per query, so gridding costs one LU
factorization plus one solve per cell.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, LinAlgWarning, lu_factor, lu_solve

from geo3d.errors import AnalysisError
from geo3d.geodata.types import PointSet3D
from geo3d.stats.variogram import VariogramModel, evaluate_model

EXACT_HIT_DISTANCE = 1e-12


@dataclass(frozen=True)
class KrigingResult:
    estimate: float
    variance: float
    weights: tuple[float, ...]


class KrigingSystem:
    """Factored ordinary-kriging system for one point set and variogram."""

    def __init__(self, points: PointSet3D, attr: str, model: VariogramModel) -> None:
        if len(points) < 2:
            raise AnalysisError("kriging requires at least 2 points")
        self.x = points.x
        self.y = points.y
        self.values = points.attribute(attr)
        self.model = model
        n = len(points)

        dx = self.x[:, None] - self.x[None, :]
        dy = self.y[:, None] - self.y[None, :]
        dist = np.sqrt(dx * dx + dy * dy)
        matrix = np.empty((n + 1, n + 1), dtype=np.float64)
        matrix[:n, :n] = evaluate_model(model, dist.ravel()).reshape(n, n)
        matrix[:n, n] = 1.0
        matrix[n, :n] = 1.0
        matrix[n, n] = 0.0
        with warnings.catch_warnings():
            warnings.simplefilter("error", LinAlgWarning)
            try:
                self._lu = lu_factor(matrix)
            except (LinAlgError, LinAlgWarning):
                raise AnalysisError("singular kriging system") from None
        if np.abs(np.diag(self._lu[0])).min() == 0.0:
            raise AnalysisError("singular kriging system")

    def solve(self, qx: float, qy: float) -> KrigingResult:
        n = self.x.shape[0]
        d = np.sqrt((self.x - qx) ** 2 + (self.y - qy) ** 2)
        hit = np.nonzero(d < EXACT_HIT_DISTANCE)[0]
        if hit.size:
            i = int(hit[0])
            weights = np.zeros(n)
            weights[i] = 1.0
            return KrigingResult(
                estimate=float(self.values[i]),
                variance=float(self.model.nugget),
                weights=tuple(weights),
            )
        rhs = np.empty(n + 1, dtype=np.float64)
        rhs[:n] = evaluate_model(self.model, d)
        rhs[n] = 1.0
        solution = lu_solve(self._lu, rhs)
        weights = solution[:n]
        mu = float(solution[n])
        estimate = float(weights @ self.values)
        variance = float(weights @ rhs[:n] + mu)
        return KrigingResult(
            estimate=estimate,
            variance=max(variance, 0.0),
            weights=tuple(float(w) for w in weights),
        )

    def solve_many(self, qx: np.ndarray, qy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Estimates and variances for a batch of queries (no weight vectors)."""
        n = self.x.shape[0]
        m = qx.shape[0]
        d = np.sqrt(
            (self.x[None, :] - qx[:, None]) ** 2 + (self.y[None, :] - qy[:, None]) ** 2
        )
        rhs = np.empty((n + 1, m), dtype=np.float64)
        rhs[:n, :] = evaluate_model(self.model, d.ravel()).reshape(m, n).T
        rhs[n, :] = 1.0
        solution = lu_solve(self._lu, rhs)
        weights = solution[:n, :]
        mu = solution[n, :]
        estimates = weights.T @ self.values
        variances = np.maximum(np.sum(weights * rhs[:n, :], axis=0) + mu, 0.0)
        exact = d < EXACT_HIT_DISTANCE
        for row in range(m):
            hit = np.nonzero(exact[row])[0]
            if hit.size:
                estimates[row] = self.values[int(hit[0])]
                variances[row] = self.model.nugget
        return estimates, variances


def krige(
    points: PointSet3D,
    attr: str = "z",
    model: VariogramModel | None = None,
    query: tuple[float, float] = (0.0, 0.0),
) -> KrigingResult:
    """Ordinary-kriging estimate at one query location."""
    if model is None:
        raise AnalysisError("a variogram model is required")
    return KrigingSystem(points, attr, model).solve(float(query[0]), float(query[1]))
