"""Bicubic B-spline surface fitting (NURBS with unit weights).

Knots are clamped and uniform over the data's bounding rectangle, directly in
data coordinates, so evaluation takes world (x, y) without a separate
parameterization step.  Control z-values come from a linear least-squares fit
with a small ridge term that keeps the system solvable when parts of the
control net see little data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from geo3d.errors import AnalysisError
from geo3d.geodata.types import PointSet3D

DEGREE = 3
RIDGE = 1e-8


def clamped_uniform_knots(n_ctrl: int, lo: float, hi: float) -> np.ndarray:
    """Clamped knot vector of length n_ctrl + DEGREE + 1 spanning [lo, hi]."""
    if n_ctrl < DEGREE + 1:
        raise AnalysisError(f"need at least {DEGREE + 1} control points per axis")
    n_spans = n_ctrl - DEGREE
    interior = lo + (hi - lo) * np.arange(1, n_spans) / n_spans
    return np.concatenate(
        [np.full(DEGREE + 1, lo), interior, np.full(DEGREE + 1, hi)]
    )


def find_span(knots: np.ndarray, n_ctrl: int, u: float) -> int:
    """Knot span index such that knots[span] <= u < knots[span+1].

    The domain's right endpoint maps into the last non-degenerate span.
    """
    if u >= knots[n_ctrl]:
        return n_ctrl - 1
    if u <= knots[DEGREE]:
        return DEGREE
    lo, hi = DEGREE, n_ctrl
    mid = (lo + hi) // 2
    while u < knots[mid] or u >= knots[mid + 1]:
        if u < knots[mid]:
            hi = mid
        else:
            lo = mid
        mid = (lo + hi) // 2
    return mid


def basis_functions(knots: np.ndarray, span: int, u: float) -> np.ndarray:
    """The DEGREE+1 nonzero B-spline basis values at u (inverted-triangle
    recurrence; no zero divisions by construction)."""
    out = np.empty(DEGREE + 1)
    left = np.empty(DEGREE + 1)
    right = np.empty(DEGREE + 1)
    out[0] = 1.0
    for j in range(1, DEGREE + 1):
        left[j] = u - knots[span + 1 - j]
        right[j] = knots[span + j] - u
        saved = 0.0
        for r in range(j):
            temp = out[r] / (right[r + 1] + left[j - r])
            out[r] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        out[j] = saved
    return out


@dataclass(frozen=True)
class SplineSurfaceModel:
    """Fitted bicubic surface: control net of z-values plus knot vectors.

    Weights are all 1.0; the evaluator still runs the rational (NURBS) form,
    which with unit weights reduces to the polynomial B-spline.
    """

    degree_u: int
    degree_v: int
    control_points: np.ndarray
    weights: np.ndarray
    knots_u: np.ndarray
    knots_v: np.ndarray
    residual_rms: float

    @property
    def domain(self) -> tuple[float, float, float, float]:
        return (
            float(self.knots_u[DEGREE]),
            float(self.knots_u[-DEGREE - 1]),
            float(self.knots_v[DEGREE]),
            float(self.knots_v[-DEGREE - 1]),
        )


def _basis_row(
    knots_u: np.ndarray,
    knots_v: np.ndarray,
    nu: int,
    nv: int,
    x: float,
    y: float,
) -> tuple[int, int, np.ndarray]:
    span_u = find_span(knots_u, nu, x)
    span_v = find_span(knots_v, nv, y)
    bu = basis_functions(knots_u, span_u, x)
    bv = basis_functions(knots_v, span_v, y)
    return span_u, span_v, np.outer(bu, bv)


def fit_nurbs_surface(
    points: PointSet3D, nu: int = 8, nv: int = 8, attr: str = "z"
) -> SplineSurfaceModel:
    """Least-squares bicubic fit with an nu x nv control net."""
    if nu < DEGREE + 1 or nv < DEGREE + 1:
        raise AnalysisError(f"control net must be at least {DEGREE + 1} per axis")
    if len(points) < nu * nv:
        raise AnalysisError(
            f"underdetermined: {nu}x{nv} control net needs >= {nu * nv} points, "
            f"got {len(points)}"
        )
    z = points.attribute(attr)
    x_lo, x_hi = float(points.x.min()), float(points.x.max())
    y_lo, y_hi = float(points.y.min()), float(points.y.max())
    if not (x_hi > x_lo and y_hi > y_lo):
        raise AnalysisError("degenerate bounding rectangle")

    knots_u = clamped_uniform_knots(nu, x_lo, x_hi)
    knots_v = clamped_uniform_knots(nv, y_lo, y_hi)

    n_pts = len(points)
    design = np.zeros((n_pts, nu * nv), dtype=np.float64)
    for k in range(n_pts):
        span_u, span_v, block = _basis_row(
            knots_u, knots_v, nu, nv, float(points.x[k]), float(points.y[k])
        )
        for a in range(DEGREE + 1):
            base = (span_u - DEGREE + a) * nv + (span_v - DEGREE)
            design[k, base : base + DEGREE + 1] = block[a]

    augmented = np.vstack([design, np.sqrt(RIDGE) * np.eye(nu * nv)])
    rhs = np.concatenate([z, np.zeros(nu * nv)])
    solution, _, _, _ = np.linalg.lstsq(augmented, rhs, rcond=None)

    residuals = z - design @ solution
    residual_rms = float(np.sqrt(residuals @ residuals / n_pts))
    control = solution.reshape(nu, nv)
    control.setflags(write=False)
    weights = np.ones((nu, nv))
    weights.setflags(write=False)
    knots_u.setflags(write=False)
    knots_v.setflags(write=False)
    return SplineSurfaceModel(
        degree_u=DEGREE,
        degree_v=DEGREE,
        control_points=control,
        weights=weights,
        knots_u=knots_u,
        knots_v=knots_v,
        residual_rms=residual_rms,
    )


def evaluate_spline(model: SplineSurfaceModel, x: float, y: float) -> float:
    """Rational surface evaluation at world (x, y) inside the domain."""
    x_lo, x_hi, y_lo, y_hi = model.domain
    if not (x_lo <= x <= x_hi and y_lo <= y <= y_hi):
        raise AnalysisError(
            f"({x}, {y}) outside domain [{x_lo}, {x_hi}] x [{y_lo}, {y_hi}]"
        )
    nu, nv = model.control_points.shape
    span_u, span_v, block = _basis_row(model.knots_u, model.knots_v, nu, nv, x, y)
    rows = slice(span_u - DEGREE, span_u + 1)
    cols = slice(span_v - DEGREE, span_v + 1)
    w = model.weights[rows, cols]
    numer = float(np.sum(block * w * model.control_points[rows, cols]))
    denom = float(np.sum(block * w))
    return numer / denom
