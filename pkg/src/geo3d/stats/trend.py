"""Polynomial trend surfaces of degree 1 to 3.

The least-squares solve runs on coordinates centered and scaled to the unit
bounding box (monomials of raw coordinates can differ by many orders of
magnitude, wrecking conditioning).  Public coefficients are re-expanded into
the raw x, y frame so they read directly as the polynomial's coefficients;
evaluation uses the scaled frame internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from geo3d.errors import AnalysisError
from geo3d.geodata.types import PointSet3D


def monomial_exponents(degree: int) -> list[tuple[int, int]]:
    """(i, j) exponent pairs of x^i y^j, ordered by (i+j, then i descending)."""
    return [(i, k - i) for k in range(degree + 1) for i in range(k, -1, -1)]


@dataclass(frozen=True)
class CoordinateTransform:
    """Affine map u = (x - x_offset)/x_scale, v = (y - y_offset)/y_scale."""

    x_offset: float
    y_offset: float
    x_scale: float
    y_scale: float

    def apply(self, x, y):
        return (np.asarray(x) - self.x_offset) / self.x_scale, (
            np.asarray(y) - self.y_offset
        ) / self.y_scale


@dataclass(frozen=True)
class TrendSurfaceModel:
    """Fitted polynomial surface.

    ``coefficients`` pair with raw-frame monomials x^i y^j in
    ``monomial_exponents(degree)`` order; ``scaled_coefficients`` are the
    numerically solved values in the centered frame.
    """

    degree: int
    coefficients: tuple[float, ...]
    r_squared: float
    residual_rms: float
    transform: CoordinateTransform
    scaled_coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        expected = (self.degree + 1) * (self.degree + 2) // 2
        if len(self.coefficients) != expected:
            raise AnalysisError(
                f"degree {self.degree} needs {expected} coefficients, "
                f"got {len(self.coefficients)}"
            )


def _design_matrix(u: np.ndarray, v: np.ndarray, degree: int) -> np.ndarray:
    cols = [u**i * v**j for i, j in monomial_exponents(degree)]
    return np.column_stack(cols)


def _expand_to_raw(
    scaled: np.ndarray, degree: int, tr: CoordinateTransform
) -> np.ndarray:
    """Rewrite sum c_ij u^i v^j with u=(x-a)/sx, v=(y-b)/sy as raw-frame
    coefficients of x^i y^j via binomial expansion."""
    exps = monomial_exponents(degree)
    index = {e: k for k, e in enumerate(exps)}
    raw = np.zeros(len(exps), dtype=np.float64)
    a, b = tr.x_offset, tr.y_offset
    sx, sy = tr.x_scale, tr.y_scale
    for (i, j), c in zip(exps, scaled):
        base = c / (sx**i * sy**j)
        # (x - a)^i (y - b)^j expanded term by term
        for ii in range(i + 1):
            for jj in range(j + 1):
                coef = (
                    base
                    * comb(i, ii)
                    * comb(j, jj)
                    * (-a) ** (i - ii)
                    * (-b) ** (j - jj)
                )
                raw[index[(ii, jj)]] += coef
    return raw


def fit_trend_surface(points: PointSet3D, degree: int, attr: str = "z") -> TrendSurfaceModel:
    """Least-squares polynomial fit of the named attribute over (x, y)."""
    if degree not in (1, 2, 3):
        raise AnalysisError(f"degree must be 1, 2 or 3, got {degree}")
    z = points.attribute(attr)
    n_coef = (degree + 1) * (degree + 2) // 2
    if len(points) < n_coef:
        raise AnalysisError(
            f"underdetermined: degree {degree} needs >= {n_coef} points, "
            f"got {len(points)}"
        )

    x, y = points.x, points.y
    x_scale = float(x.max() - x.min()) or 1.0
    y_scale = float(y.max() - y.min()) or 1.0
    tr = CoordinateTransform(
        x_offset=float(x.min() + x.max()) / 2.0,
        y_offset=float(y.min() + y.max()) / 2.0,
        x_scale=x_scale,
        y_scale=y_scale,
    )
    u, v = tr.apply(x, y)
    design = _design_matrix(u, v, degree)
    solution, _, rank, _ = np.linalg.lstsq(design, z, rcond=None)
    if rank < n_coef:
        raise AnalysisError(
            f"rank-deficient design matrix (rank {rank} < {n_coef}); "
            "points may be collinear"
        )

    residuals = z - design @ solution
    ss_res = float(residuals @ residuals)
    dz = z - z.mean()
    ss_tot = float(dz @ dz)
    if ss_res <= 1e-12 * max(1.0, ss_tot):
        r_squared = 1.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    residual_rms = float(np.sqrt(ss_res / len(points)))

    raw = _expand_to_raw(solution, degree, tr)
    return TrendSurfaceModel(
        degree=degree,
        coefficients=tuple(float(c) for c in raw),
        r_squared=float(r_squared),
        residual_rms=residual_rms,
        transform=tr,
        scaled_coefficients=tuple(float(c) for c in solution),
    )


def evaluate_trend_surface(model: TrendSurfaceModel, x, y):
    """Evaluate at (x, y); accepts scalars or arrays."""
    u, v = model.transform.apply(x, y)
    total = np.zeros_like(np.asarray(u, dtype=np.float64))
    for (i, j), c in zip(monomial_exponents(model.degree), model.scaled_coefficients):
        total = total + c * u**i * v**j
    if total.ndim == 0:
        return float(total)
    return total
