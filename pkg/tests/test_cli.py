"""End-to-end checks of the ``geo3d`` command-line interface.

Covers the exit-code contract (0 success, 1 domain/IO failure, 2 usage
error), report schema, file outputs, and byte-identical reruns.
"""

from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from geo3d.cli import run
from geo3d.geodata import RasterGrid, load_raster, save_points, save_raster
from geo3d.geodata.types import PointSet3D

REPORT_KEYS = {"analysis", "outputs", "parameters", "provenance"}


@pytest.fixture()
def fx(fixtures_dir):
    def path(name):
        return str(fixtures_dir / name)

    return path


def make_flat_dem(path, value=5.0):
    values = np.full((6, 7), value)
    grid = RasterGrid(
        ncols=7, nrows=6, x_origin=0.0, y_origin=0.0, cellsize=2.0,
        nodata_value=-9999.0, values=values,
    )
    save_raster(grid, path)
    return grid


def make_plane_points(path):
    rng = np.random.default_rng(5)
    x = rng.uniform(0, 10, 40)
    y = rng.uniform(0, 10, 40)
    z = 1.0 + 2.0 * x + 3.0 * y
    save_points(PointSet3D(x=x, y=y, z=z), path)


def read_json(capsys):
    data = json.loads(capsys.readouterr().out)
    assert set(data) == REPORT_KEYS
    return data


# --- exit codes ---------------------------------------------------------


def test_version_exits_zero(capsys):
    assert run(["--version"]) == 0
    assert "geo3d" in capsys.readouterr().out


def test_help_exits_zero_at_every_level(capsys):
    for argv in ([], ["terrain"], ["stats"], ["net"], ["geo"], ["raster"]):
        assert run(argv + ["--help"]) == 0
        capsys.readouterr()


def test_missing_subcommand_is_usage_error(capsys):
    assert run([]) == 2
    assert run(["stats"]) == 2
    capsys.readouterr()


def test_unknown_command_is_usage_error(capsys):
    assert run(["frobnicate"]) == 2
    capsys.readouterr()


def test_unsupported_degree_is_usage_error(fx, capsys):
    code = run(
        ["stats", "trend", "--points", fx("points.csv"), "--degree", "9"]
    )
    assert code == 2
    assert "--degree" in capsys.readouterr().err


def test_missing_input_file_is_runtime_error(tmp_path, capsys):
    out = tmp_path / "slope.asc"
    code = run(
        ["terrain", "slope", "--dem", str(tmp_path / "nope.asc"), "--out", str(out)]
    )
    assert code == 1
    assert not out.exists()
    # a failed run must not leave stray temporaries behind
    assert list(tmp_path.iterdir()) == []
    capsys.readouterr()


def test_no_route_is_runtime_error(fx, capsys):
    code = run(
        ["net", "route", "--network", fx("network.json"),
         "--from", "gate", "--to", "kiosk"]
    )
    assert code == 1
    assert "no route" in capsys.readouterr().err


def test_unknown_node_is_runtime_error(fx, capsys):
    code = run(
        ["net", "route", "--network", fx("network.json"),
         "--from", "gate", "--to", "atlantis"]
    )
    assert code == 1
    assert "atlantis" in capsys.readouterr().err


# --- terrain ------------------------------------------------------------


def test_flat_dem_has_zero_slope(tmp_path, capsys):
    dem = tmp_path / "flat.asc"
    out = tmp_path / "slope.asc"
    make_flat_dem(dem)
    assert run(["terrain", "slope", "--dem", str(dem), "--out", str(out)]) == 0
    grid = load_raster(out)
    interior = grid.values[1:-1, 1:-1]
    assert np.all(interior == 0.0)
    # border cells lack a full neighbourhood
    assert np.all(grid.values[0, :] == grid.nodata_value)
    capsys.readouterr()


def test_all_terrain_factors_produce_grids(fx, tmp_path, capsys):
    for factor in ("slope", "aspect", "plan-curv", "prof-curv"):
        out = tmp_path / f"{factor}.asc"
        code = run(
            ["terrain", factor, "--dem", fx("dem.asc"), "--out", str(out)]
        )
        assert code == 0
        loaded = load_raster(out)
        assert loaded.values.shape == (12, 12)
    capsys.readouterr()


# --- stats --------------------------------------------------------------


def test_correlate_report(fx, capsys):
    code = run(
        ["stats", "correlate", "--points", fx("points.csv"),
         "--attrs", "z,temp"]
    )
    assert code == 0
    report = read_json(capsys)
    assert report["analysis"] == "stats.correlate"
    matrix = np.asarray(report["outputs"]["matrix"])
    assert matrix.shape == (2, 2)
    assert matrix[0, 0] == 1.0 and matrix[1, 1] == 1.0
    assert matrix[0, 1] == matrix[1, 0]
    assert -1.0 <= matrix[0, 1] <= 1.0


def test_trend_exact_plane(tmp_path, capsys):
    pts = tmp_path / "plane.csv"
    make_plane_points(pts)
    assert run(["stats", "trend", "--points", str(pts), "--degree", "1"]) == 0
    report = read_json(capsys)
    out = report["outputs"]
    assert out["r_squared"] == 1.0
    assert np.allclose(out["coefficients"], [1.0, 2.0, 3.0], atol=1e-8)


def test_idw_grid_output(fx, tmp_path, capsys):
    out = tmp_path / "idw.asc"
    code = run(
        ["stats", "idw", "--points", fx("points.csv"),
         "--grid", "0,0,1,10,10", "--out", str(out)]
    )
    assert code == 0
    grid = load_raster(out)
    assert grid.values.shape == (10, 10)
    pts = np.loadtxt(fx("points.csv"), delimiter=",", skiprows=1)
    z = pts[:, 2]
    assert grid.values.min() >= z.min() - 1e-12
    assert grid.values.max() <= z.max() + 1e-12
    capsys.readouterr()


def test_variogram_report_with_fit(fx, capsys):
    code = run(
        ["stats", "variogram", "--points", fx("points.csv"),
         "--lags", "8", "--fit", "spherical"]
    )
    assert code == 0
    report = read_json(capsys)
    out = report["outputs"]
    assert len(out["bins"]) == 8
    for entry in out["bins"]:
        assert entry["pair_count"] >= 0
        if entry["gamma"] is not None:
            assert entry["gamma"] >= 0.0
    model = out["model"]
    assert model["kind"] == "spherical"
    assert model["sill"] >= model["nugget"] >= 0.0
    assert model["range"] > 0.0


def test_krige_grids(fx, tmp_path, capsys):
    est = tmp_path / "est.asc"
    var = tmp_path / "var.asc"
    code = run(
        ["stats", "krige", "--points", fx("points.csv"),
         "--model", "spherical", "--nugget", "0.05", "--sill", "4.0",
         "--range", "6.0", "--grid", "0,0,1,10,10",
         "--out", str(est), "--variance-out", str(var)]
    )
    assert code == 0
    est_grid = load_raster(est)
    var_grid = load_raster(var)
    assert est_grid.values.shape == (10, 10)
    assert np.all(var_grid.values >= 0.0)
    capsys.readouterr()


def test_nurbs_report(tmp_path, capsys):
    pts = tmp_path / "plane.csv"
    make_plane_points(pts)
    code = run(
        ["stats", "nurbs", "--points", str(pts), "--control", "4x4"]
    )
    assert code == 0
    report = read_json(capsys)
    out = report["outputs"]
    assert out["residual_rms"] <= 1e-5
    assert out["degree_u"] == 3 and out["degree_v"] == 3
    control = out["control_points"]
    assert len(control) == 4 and len(control[0]) == 4


# --- network and geocoding ----------------------------------------------


def test_net_indices_report(fx, capsys):
    assert run(["net", "indices", "--network", fx("network.json")]) == 0
    out = read_json(capsys)["outputs"]
    assert out["n"] == 9 and out["m"] == 7 and out["p_subgraphs"] == 2
    assert out["beta"] == pytest.approx(7.0 / 9.0)
    assert out["k_loops"] == 0
    assert out["gamma"] == pytest.approx(700.0 / 36.0)


def test_net_route_report(fx, capsys):
    code = run(
        ["net", "route", "--network", fx("network.json"),
         "--from", "gate", "--to", "lib-up"]
    )
    assert code == 0
    out = read_json(capsys)["outputs"]
    assert out["node_path"] == ["gate", "plaza", "lib-door", "lib-lobby",
                                "lib-hall", "lib-up"]
    assert out["total_length"] == pytest.approx(64.0)
    assert out["layer_transitions"] == 1


def test_net_components_report(fx, capsys):
    assert run(["net", "components", "--network", fx("network.json")]) == 0
    out = read_json(capsys)["outputs"]
    assert len(out["components"]) == 2
    assert ["kiosk"] in out["components"]


def test_net_neighbors_report(fx, capsys):
    code = run(
        ["net", "neighbors", "--network", fx("network.json"),
         "--node", "plaza"]
    )
    assert code == 0
    out = read_json(capsys)["outputs"]
    assert out["neighbors"] == ["gate", "lab-door", "lib-door"]


def test_geo_match_report(fx, capsys):
    code = run(
        ["geo", "match", "--library", fx("addresses.csv"),
         "--query", "1 Library Walk", "--top", "3"]
    )
    assert code == 0
    out = read_json(capsys)["outputs"]
    assert out["matches"][0]["record_id"] == "A1"
    assert out["matches"][0]["score"] == 1.0
    assert len(out["matches"]) == 3


def test_geo_route_report(fx, capsys):
    code = run(
        ["geo", "route", "--library", fx("addresses.csv"),
         "--network", fx("network.json"),
         "--from-addr", "1 Library Walk", "--to-addr", "2 Laboratory Road"]
    )
    assert code == 0
    out = read_json(capsys)["outputs"]
    assert out["from_match"]["record_id"] == "A1"
    assert out["to_match"]["record_id"] == "A2"
    assert out["route"]["total_length"] == pytest.approx(54.0)
    assert out["route"]["layer_transitions"] == 2


def test_geo_route_failure(fx, capsys):
    code = run(
        ["geo", "route", "--library", fx("addresses.csv"),
         "--network", fx("network.json"),
         "--from-addr", "jqf", "--to-addr", "2 Laboratory Road"]
    )
    assert code == 1
    assert "geocode" in capsys.readouterr().err


# --- raster rendering ----------------------------------------------------


def test_heatmap_svg(fx, tmp_path, capsys):
    out = tmp_path / "dem.svg"
    code = run(
        ["raster", "heatmap", "--grid", fx("dem.asc"), "--out", str(out)]
    )
    assert code == 0
    text = out.read_text()
    assert text.startswith("<svg")
    assert text.count("<rect") == 144
    capsys.readouterr()


# --- reports and determinism ---------------------------------------------


def test_report_file_instead_of_stdout(fx, tmp_path, capsys):
    report_path = tmp_path / "indices.json"
    code = run(
        ["net", "indices", "--network", fx("network.json"),
         "--report", str(report_path)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    data = json.loads(report_path.read_text())
    assert set(data) == REPORT_KEYS


def test_reruns_are_byte_identical(fx, tmp_path, capsys):
    def run_once(tag):
        est = tmp_path / f"est_{tag}.asc"
        rep = tmp_path / f"rep_{tag}.json"
        svg = tmp_path / f"map_{tag}.svg"
        assert run(
            ["stats", "krige", "--points", fx("points.csv"),
             "--model", "exponential", "--nugget", "0.1", "--sill", "3.0",
             "--range", "5.0", "--grid", "0,0,1,8,8", "--out", str(est)]
        ) == 0
        assert run(
            ["net", "route", "--network", fx("network.json"),
             "--from", "gate", "--to", "lab-lobby", "--report", str(rep)]
        ) == 0
        assert run(
            ["raster", "heatmap", "--grid", str(est), "--out", str(svg),
             "--cell-px", "8"]
        ) == 0
        return est.read_bytes(), rep.read_bytes(), svg.read_bytes()

    first = run_once("a")
    second = run_once("b")
    for left, right in zip(first, second):
        assert left == right
    capsys.readouterr()


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "geo3d", "--version"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert "geo3d" in out.stdout
