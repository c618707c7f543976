"""Empirical semivariograms and theoretical variogram models.

The empirical estimator is the classical one: gamma_hat(h) = sum of squared
value differences over the pairs in the lag bin, divided by twice the pair
count.  Bin b covers distances in (b*w, (b+1)*w]; pairs beyond max_lag are
dropped, empty bins report pair_count 0 with gamma = NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from geo3d import kernels
from geo3d.errors import AnalysisError
from geo3d.geodata.types import PointSet3D

MODEL_KINDS = ("spherical", "exponential", "gaussian", "nugget")


@dataclass(frozen=True)
class VariogramBin:
    lag_center: float
    gamma: float
    pair_count: int


@dataclass(frozen=True)
class VariogramModel:
    """Theoretical variogram: gamma(0) = 0, gamma(h) approaches sill.

    The spherical model reaches the sill exactly at h = range; exponential
    and gaussian reach 95 percent of it there (practical-range convention).
    """

    kind: str
    nugget: float
    sill: float
    range: float

    def __post_init__(self) -> None:
        if self.kind not in MODEL_KINDS:
            raise AnalysisError(f"unknown variogram kind '{self.kind}'")
        if self.nugget < 0:
            raise AnalysisError("nugget must be nonnegative")
        if self.sill < self.nugget:
            raise AnalysisError("sill must be >= nugget")
        if not self.range > 0:
            raise AnalysisError("range must be positive")

    def __call__(self, h) -> np.ndarray | float:
        return evaluate_model(self, h)


def evaluate_model(model: VariogramModel, h) -> np.ndarray | float:
    """gamma(h) for scalar or array h."""
    h_arr = np.asarray(h, dtype=np.float64)
    scalar = h_arr.ndim == 0
    h_arr = np.atleast_1d(h_arr)
    c0, c1, a = model.nugget, model.sill - model.nugget, model.range
    pos = h_arr > 0
    if model.kind == "spherical":
        u = np.minimum(h_arr / a, 1.0)
        out = c0 + c1 * (1.5 * u - 0.5 * u**3)
    elif model.kind == "exponential":
        out = c0 + c1 * (1.0 - np.exp(-3.0 * h_arr / a))
    elif model.kind == "gaussian":
        out = c0 + c1 * (1.0 - np.exp(-3.0 * h_arr**2 / a**2))
    else:  # nugget
        out = np.where(pos, model.sill, 0.0)
    out = np.where(pos, out, 0.0)
    return float(out[0]) if scalar else out


def empirical_semivariogram(
    points: PointSet3D, attr: str = "z", n_lags: int = 10, max_lag: float | None = None
) -> list[VariogramBin]:
    """Binned Matheron estimator over all point pairs.

    max_lag defaults to half the bounding-box diagonal when omitted.
    """
    if len(points) < 2:
        raise AnalysisError("semivariogram requires at least 2 points")
    if n_lags < 1:
        raise AnalysisError("n_lags must be positive")
    if max_lag is None:
        dx = float(points.x.max() - points.x.min())
        dy = float(points.y.max() - points.y.min())
        max_lag = float(np.hypot(dx, dy)) / 2.0
    if not max_lag > 0:
        raise AnalysisError("max_lag must be positive")
    values = points.attribute(attr)
    width = max_lag / n_lags
    sums, counts = kernels.variogram_accumulate(
        np.ascontiguousarray(points.x),
        np.ascontiguousarray(points.y),
        np.ascontiguousarray(values),
        width,
        n_lags,
    )
    bins = []
    for b in range(n_lags):
        count = int(counts[b])
        gamma = sums[b] / (2.0 * count) if count else float("nan")
        bins.append(VariogramBin((b + 0.5) * width, float(gamma), count))
    return bins


def fit_variogram(
    bins: list[VariogramBin],
    kind: str,
    value_variance: float | None = None,
) -> VariogramModel:
    """Weighted least-squares fit of a model to empirical bins.

    Residuals are weighted by sqrt(pair_count); starting values: nugget =
    first non-empty bin's gamma, sill = value variance (or the max bin gamma),
    range = half the largest lag.
    """
    if kind not in MODEL_KINDS:
        raise AnalysisError(f"unknown variogram kind '{kind}'")
    filled = [b for b in bins if b.pair_count > 0]
    if len(filled) < 2:
        raise AnalysisError("need at least 2 non-empty bins to fit")
    h = np.array([b.lag_center for b in filled])
    g = np.array([b.gamma for b in filled])
    w = np.sqrt(np.array([b.pair_count for b in filled], dtype=np.float64))

    gamma_max = float(g.max())
    sill0 = float(value_variance) if value_variance else gamma_max
    sill0 = max(sill0, 1e-12)
    nugget0 = min(float(g[0]), sill0)
    range0 = max(float(h.max()) / 2.0, 1e-9)

    if kind == "nugget":
        # One free parameter; the weighted mean minimizes directly.
        sill = float(np.sum(w * w * g) / np.sum(w * w))
        sill = max(sill, 0.0)
        return VariogramModel(kind="nugget", nugget=sill, sill=sill, range=range0)

    def residual(theta):
        nugget, partial, rng = theta
        model = VariogramModel(
            kind=kind, nugget=max(nugget, 0.0),
            sill=max(nugget, 0.0) + max(partial, 0.0),
            range=max(rng, 1e-9),
        )
        return w * (evaluate_model(model, h) - g)

    start = np.array([nugget0, max(sill0 - nugget0, 1e-12), range0])
    fit = least_squares(
        residual, start, bounds=([0.0, 0.0, 1e-9], np.inf), method="trf"
    )
    nugget, partial, rng = fit.x
    return VariogramModel(
        kind=kind,
        nugget=float(max(nugget, 0.0)),
        sill=float(max(nugget, 0.0) + max(partial, 0.0)),
        range=float(max(rng, 1e-9)),
    )
