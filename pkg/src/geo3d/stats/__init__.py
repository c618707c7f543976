"""Three-dimensional statistical analysis.

Correlation, trend surfaces, IDW, semivariograms, ordinary kriging and
B-spline surface fitting.  All distances here are planimetric: the third
dimension enters as the interpolated value, not the metric.
"""

from geo3d.stats.correlation import correlation_matrix, pearson
from geo3d.stats.idw import idw_interpolate, idw_many
from geo3d.stats.interpolate import idw_grid, interpolate_grid, kriging_grid
from geo3d.stats.kriging import KrigingResult, KrigingSystem, krige
from geo3d.stats.spline import (
    SplineSurfaceModel,
    basis_functions,
    clamped_uniform_knots,
    evaluate_spline,
    find_span,
    fit_nurbs_surface,
)
from geo3d.stats.trend import (
    CoordinateTransform,
    TrendSurfaceModel,
    evaluate_trend_surface,
    fit_trend_surface,
    monomial_exponents,
)
from geo3d.stats.variogram import (
    VariogramBin,
    VariogramModel,
    empirical_semivariogram,
    evaluate_model,
    fit_variogram,
)

__all__ = [
    "CoordinateTransform",
    "KrigingResult",
    "KrigingSystem",
    "SplineSurfaceModel",
    "TrendSurfaceModel",
    "VariogramBin",
    "VariogramModel",
    "basis_functions",
    "clamped_uniform_knots",
    "correlation_matrix",
    "empirical_semivariogram",
    "evaluate_model",
    "evaluate_spline",
    "evaluate_trend_surface",
    "find_span",
    "fit_nurbs_surface",
    "fit_trend_surface",
    "fit_variogram",
    "idw_grid",
    "idw_interpolate",
    "idw_many",
    "interpolate_grid",
    "krige",
    "kriging_grid",
    "monomial_exponents",
    "pearson",
]
