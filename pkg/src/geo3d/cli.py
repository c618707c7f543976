"""Command-line interface.

One binary, nested subcommands mirroring the analysis modules:

    geo3d terrain slope|aspect|plan-curv|prof-curv --dem in.asc --out out.asc
    geo3d stats correlate|trend|idw|variogram|krige|nurbs ...
    geo3d net indices|route|components|neighbors ...
    geo3d geo match|route ...
    geo3d raster heatmap --grid in.asc --out out.svg

Exit codes: 0 success, 1 input/validation errors, 2 usage errors.  All
diagnostics go to stderr; data goes to files or stdout.  Identical argv and
inputs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import sys

from geo3d import __version__, network, stats, terrain
from geo3d.errors import Geo3DError
from geo3d.geodata import io as gio
from geo3d.geodata.render import render_heatmap
from geo3d.geodata.types import AnalysisReport, GridSpec
from geo3d.stats.variogram import MODEL_KINDS, VariogramModel


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _grid_spec(text: str) -> GridSpec:
    """Parse x0,y0,cellsize,ncols,nrows."""
    parts = text.split(",")
    if len(parts) != 5:
        raise argparse.ArgumentTypeError(
            f"grid spec must be x0,y0,cellsize,ncols,nrows, got {text!r}"
        )
    try:
        x0, y0, cs = float(parts[0]), float(parts[1]), float(parts[2])
        nc, nr = int(parts[3]), int(parts[4])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed grid spec {text!r}") from None
    if cs <= 0 or nc < 1 or nr < 1:
        raise argparse.ArgumentTypeError(f"grid spec out of range: {text!r}")
    return GridSpec(x_origin=x0, y_origin=y0, cellsize=cs, ncols=nc, nrows=nr)


def _control_net(text: str) -> tuple[int, int]:
    """Parse NUxNV, both at least 4."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"control net must be NUxNV, got {text!r}")
    try:
        nu, nv = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed control net {text!r}") from None
    if nu < 4 or nv < 4:
        raise argparse.ArgumentTypeError("control net must be at least 4x4")
    return nu, nv


def _attr_list(text: str) -> list[str]:
    attrs = [a.strip() for a in text.split(",") if a.strip()]
    if not attrs:
        raise argparse.ArgumentTypeError("empty attribute list")
    return attrs


def _jsonsafe(value):
    """Replace non-finite floats with None so reports stay valid JSON."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _jsonsafe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonsafe(v) for v in value]
    return value


def _emit_report(args, analysis: str, parameters: dict, outputs: dict, inputs: list) -> None:
    report = AnalysisReport(
        analysis=analysis,
        parameters=_jsonsafe(parameters),
        outputs=_jsonsafe(outputs),
        provenance=gio.provenance(inputs),
    )
    target = getattr(args, "report", None)
    if target:
        gio.save_report(report, target)
    else:
        sys.stdout.write(report.to_json())


# ---------------------------------------------------------------------------
# terrain


def _cmd_terrain(args) -> int:
    grid = gio.load_raster(args.dem)
    op = {
        "slope": terrain.slope,
        "aspect": terrain.aspect,
        "plan-curv": terrain.plane_curvature,
        "prof-curv": terrain.profile_curvature,
    }[args.factor]
    gio.save_raster(op(grid), args.out)
    return 0


# ---------------------------------------------------------------------------
# stats


def _cmd_correlate(args) -> int:
    points = gio.load_points(args.points)
    matrix = stats.correlation_matrix(points, args.attrs)
    _emit_report(
        args,
        "stats.correlate",
        {"attrs": args.attrs},
        {"matrix": [[float(v) for v in row] for row in matrix]},
        [args.points],
    )
    return 0


def _cmd_trend(args) -> int:
    points = gio.load_points(args.points)
    model = stats.fit_trend_surface(points, args.degree, attr=args.attr)
    _emit_report(
        args,
        "stats.trend",
        {"degree": args.degree, "attr": args.attr},
        {
            "coefficients": list(model.coefficients),
            "r_squared": model.r_squared,
            "residual_rms": model.residual_rms,
            "transform": {
                "x_offset": model.transform.x_offset,
                "y_offset": model.transform.y_offset,
                "x_scale": model.transform.x_scale,
                "y_scale": model.transform.y_scale,
            },
            "scaled_coefficients": list(model.scaled_coefficients),
        },
        [args.points],
    )
    return 0


def _cmd_idw(args) -> int:
    points = gio.load_points(args.points)
    grid = stats.idw_grid(
        points, args.grid, attr=args.attr, power=args.power, k_neighbors=args.k
    )
    gio.save_raster(grid, args.out)
    return 0


def _cmd_variogram(args) -> int:
    points = gio.load_points(args.points)
    bins = stats.empirical_semivariogram(
        points, attr=args.attr, n_lags=args.lags, max_lag=args.max_lag
    )
    outputs: dict = {
        "bins": [
            {"lag_center": b.lag_center, "gamma": b.gamma, "pair_count": b.pair_count}
            for b in bins
        ]
    }
    if args.fit:
        values = points.attribute(args.attr)
        model = stats.fit_variogram(bins, args.fit, value_variance=float(values.var()))
        outputs["model"] = {
            "kind": model.kind,
            "nugget": model.nugget,
            "sill": model.sill,
            "range": model.range,
        }
    _emit_report(
        args,
        "stats.variogram",
        {
            "attr": args.attr,
            "lags": args.lags,
            "max_lag": args.max_lag,
            "fit": args.fit,
        },
        outputs,
        [args.points],
    )
    return 0


def _cmd_krige(args) -> int:
    points = gio.load_points(args.points)
    model = VariogramModel(
        kind=args.model, nugget=args.nugget, sill=args.sill, range=args.range
    )
    estimates, variances = stats.kriging_grid(points, args.grid, model, attr=args.attr)
    gio.save_raster(estimates, args.out)
    if args.variance_out:
        gio.save_raster(variances, args.variance_out)
    return 0


def _cmd_nurbs(args) -> int:
    points = gio.load_points(args.points)
    nu, nv = args.control
    model = stats.fit_nurbs_surface(points, nu=nu, nv=nv, attr=args.attr)
    _emit_report(
        args,
        "stats.nurbs",
        {"control": f"{nu}x{nv}", "attr": args.attr},
        {
            "degree_u": model.degree_u,
            "degree_v": model.degree_v,
            "knots_u": [float(k) for k in model.knots_u],
            "knots_v": [float(k) for k in model.knots_v],
            "control_points": [[float(v) for v in row] for row in model.control_points],
            "residual_rms": model.residual_rms,
        },
        [args.points],
    )
    return 0


# ---------------------------------------------------------------------------
# net / geo / raster


def _cmd_net_indices(args) -> int:
    net = gio.load_network(args.network)
    indices = network.measure_indices(net)
    _emit_report(
        args,
        "net.indices",
        {},
        {
            "m": indices.m,
            "n": indices.n,
            "p_subgraphs": indices.p_subgraphs,
            "beta": indices.beta,
            "k_loops": indices.k_loops,
            "alpha_paper": indices.alpha_paper,
            "alpha_standard": indices.alpha_standard,
            "gamma": indices.gamma,
        },
        [args.network],
    )
    return 0


def _route_outputs(route: network.RouteResult) -> dict:
    return {
        "node_path": list(route.node_path),
        "total_length": route.total_length,
        "layer_transitions": route.layer_transitions,
    }


def _cmd_net_route(args) -> int:
    net = gio.load_network(args.network)
    route = network.indoor_outdoor_route(net, args.start, args.end)
    _emit_report(
        args,
        "net.route",
        {"from": args.start, "to": args.end},
        _route_outputs(route),
        [args.network],
    )
    return 0


def _cmd_net_components(args) -> int:
    net = gio.load_network(args.network)
    _emit_report(
        args,
        "net.components",
        {},
        {"components": network.connectivity(net)},
        [args.network],
    )
    return 0


def _cmd_net_neighbors(args) -> int:
    net = gio.load_network(args.network)
    _emit_report(
        args,
        "net.neighbors",
        {"node": args.node},
        {"neighbors": network.neighbors(net, args.node)},
        [args.network],
    )
    return 0


def _match_outputs(match: network.GeocodeMatch) -> dict:
    return {
        "record_id": match.record_id,
        "score": match.score,
        "location": list(match.location),
    }


def _cmd_geo_match(args) -> int:
    library = gio.load_address_library(args.library)
    matches = network.geocode(library, args.query, k=args.top)
    _emit_report(
        args,
        "geo.match",
        {"query": args.query, "top": args.top},
        {"matches": [_match_outputs(m) for m in matches]},
        [args.library],
    )
    return 0


def _cmd_geo_route(args) -> int:
    net = gio.load_network(args.network)
    library = gio.load_address_library(args.library)
    match_from, match_to, route = network.route_between_addresses(
        net, library, args.from_addr, args.to_addr
    )
    _emit_report(
        args,
        "geo.route",
        {"from_addr": args.from_addr, "to_addr": args.to_addr},
        {
            "from_match": _match_outputs(match_from),
            "to_match": _match_outputs(match_to),
            "route": _route_outputs(route),
        },
        [args.network, args.library],
    )
    return 0


def _cmd_heatmap(args) -> int:
    grid = gio.load_raster(args.grid)
    render_heatmap(grid, args.out, cell_px=args.cell_px)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_version(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--version", action="version", version=f"geo3d {__version__}"
    )


def _add_report_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--report", help="write the JSON report here instead of stdout"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geo3d", description="3D geospatial analysis engine"
    )
    _add_version(parser)
    top = parser.add_subparsers(dest="group", required=True)

    # terrain -------------------------------------------------------------
    p_terrain = top.add_parser("terrain", help="DEM topographic factors")
    _add_version(p_terrain)
    sub = p_terrain.add_subparsers(dest="factor", required=True)
    for name, desc in (
        ("slope", "gradient in degrees"),
        ("aspect", "slope aspect in degrees"),
        ("plan-curv", "plane (contour) curvature"),
        ("prof-curv", "profile curvature"),
    ):
        p = sub.add_parser(name, help=desc)
        _add_version(p)
        p.add_argument("--dem", required=True, help="input DEM (.asc)")
        p.add_argument("--out", required=True, help="output grid (.asc)")
        p.set_defaults(func=_cmd_terrain)

    # stats ----------------------------------------------------------------
    p_stats = top.add_parser("stats", help="statistics and interpolation")
    _add_version(p_stats)
    sub = p_stats.add_subparsers(dest="op", required=True)

    p = sub.add_parser("correlate", help="Pearson correlation matrix")
    _add_version(p)
    p.add_argument("--points", required=True)
    p.add_argument("--attrs", required=True, type=_attr_list, help="comma-separated")
    _add_report_option(p)
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("trend", help="polynomial trend surface")
    _add_version(p)
    p.add_argument("--points", required=True)
    p.add_argument("--degree", required=True, type=int, choices=(1, 2, 3))
    p.add_argument("--attr", default="z")
    _add_report_option(p)
    p.set_defaults(func=_cmd_trend)

    p = sub.add_parser("idw", help="inverse-distance-weighted grid")
    _add_version(p)
    p.add_argument("--points", required=True)
    p.add_argument("--power", type=_positive_float, default=2.0)
    p.add_argument("--k", type=_positive_int, default=None, help="neighbor count")
    p.add_argument("--attr", default="z")
    p.add_argument("--grid", required=True, type=_grid_spec, help="x0,y0,cs,nc,nr")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_idw)

    p = sub.add_parser("variogram", help="empirical semivariogram")
    _add_version(p)
    p.add_argument("--points", required=True)
    p.add_argument("--lags", type=_positive_int, default=10)
    p.add_argument("--max-lag", type=_positive_float, default=None)
    p.add_argument("--attr", default="z")
    p.add_argument("--fit", choices=MODEL_KINDS, default=None, help="fit a model")
    _add_report_option(p)
    p.set_defaults(func=_cmd_variogram)

    p = sub.add_parser("krige", help="ordinary-kriging grid")
    _add_version(p)
    p.add_argument("--points", required=True)
    p.add_argument("--model", required=True, choices=MODEL_KINDS)
    p.add_argument("--nugget", type=float, required=True)
    p.add_argument("--sill", type=float, required=True)
    p.add_argument("--range", type=_positive_float, required=True)
    p.add_argument("--attr", default="z")
    p.add_argument("--grid", required=True, type=_grid_spec, help="x0,y0,cs,nc,nr")
    p.add_argument("--out", required=True)
    p.add_argument("--variance-out", default=None, help="kriging variance grid")
    p.set_defaults(func=_cmd_krige)

    p = sub.add_parser("nurbs", help="bicubic spline surface fit")
    _add_version(p)
    p.add_argument("--points", required=True)
    p.add_argument("--control", type=_control_net, default=(8, 8), help="NUxNV")
    p.add_argument("--attr", default="z")
    _add_report_option(p)
    p.set_defaults(func=_cmd_nurbs)

    # net --------------------------------------------------------------
    p_net = top.add_parser("net", help="network analysis")
    _add_version(p_net)
    sub = p_net.add_subparsers(dest="op", required=True)

    p = sub.add_parser("indices", help="beta/k/alpha/gamma indices")
    _add_version(p)
    p.add_argument("--network", required=True)
    _add_report_option(p)
    p.set_defaults(func=_cmd_net_indices)

    p = sub.add_parser("route", help="shortest path between nodes")
    _add_version(p)
    p.add_argument("--network", required=True)
    p.add_argument("--from", dest="start", required=True, metavar="NODE")
    p.add_argument("--to", dest="end", required=True, metavar="NODE")
    _add_report_option(p)
    p.set_defaults(func=_cmd_net_route)

    p = sub.add_parser("components", help="connected components")
    _add_version(p)
    p.add_argument("--network", required=True)
    _add_report_option(p)
    p.set_defaults(func=_cmd_net_components)

    p = sub.add_parser("neighbors", help="adjacent nodes")
    _add_version(p)
    p.add_argument("--network", required=True)
    p.add_argument("--node", required=True)
    _add_report_option(p)
    p.set_defaults(func=_cmd_net_neighbors)

    # geo ----------------------------------------------------------------
    p_geo = top.add_parser("geo", help="address matching and routing")
    _add_version(p_geo)
    sub = p_geo.add_subparsers(dest="op", required=True)

    p = sub.add_parser("match", help="geocode a free-text address")
    _add_version(p)
    p.add_argument("--library", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--top", type=_positive_int, default=5)
    _add_report_option(p)
    p.set_defaults(func=_cmd_geo_match)

    p = sub.add_parser("route", help="route between two addresses")
    _add_version(p)
    p.add_argument("--library", required=True)
    p.add_argument("--network", required=True)
    p.add_argument("--from-addr", required=True)
    p.add_argument("--to-addr", required=True)
    _add_report_option(p)
    p.set_defaults(func=_cmd_geo_route)

    # raster -------------------------------------------------------------
    p_raster = top.add_parser("raster", help="raster utilities")
    _add_version(p_raster)
    sub = p_raster.add_subparsers(dest="op", required=True)

    p = sub.add_parser("heatmap", help="render a grid as an SVG heatmap")
    _add_version(p)
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cell-px", type=_positive_int, default=10)
    p.set_defaults(func=_cmd_heatmap)

    return parser


def run(argv: list[str]) -> int:
    """Parse argv and execute; never raises, returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except Geo3DError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
