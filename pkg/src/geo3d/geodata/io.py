"""File readers and writers for all supported formats.

Formats: ASCII raster grids, point CSVs, network JSON, address CSVs and
analysis report JSON.  Every writer is atomic (temp file in the target
directory, then rename) and deterministic: the same inputs produce
byte-identical outputs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from geo3d.errors import FormatError
from geo3d.geodata.types import (
    AddressLibrary,
    AnalysisReport,
    Network3D,
    NetworkNode,
    PointSet3D,
    RasterGrid,
)

_HEADER_KEYS = ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value")
# Canonical casing used on output; readers match case-insensitively.
_HEADER_OUT = ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "NODATA_value")


def _atomic_write_text(path: str | os.PathLike, text: str) -> None:
    """Write text so that readers never observe a partial file."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value: float) -> str:
    """Canonical number formatting: 10 significant digits, no trailing cruft."""
    return "%.10g" % value


# ---------------------------------------------------------------------------
# Raster grids


def load_raster(path: str | os.PathLike) -> RasterGrid:
    """Read an ASCII grid.

    The six header lines must appear first, in order, one ``key value`` pair
    per line (keys case-insensitive).  The remaining whitespace-separated
    tokens are cell values, row 0 first (northernmost).
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read raster '{path}': {exc}") from None
    lines = text.splitlines()
    header: dict[str, float] = {}
    consumed = 0
    for expect in _HEADER_KEYS:
        if consumed >= len(lines):
            raise FormatError(f"'{path}': missing header line '{expect}'")
        parts = lines[consumed].split()
        if len(parts) != 2 or parts[0].lower() != expect:
            raise FormatError(
                f"'{path}' line {consumed + 1}: expected '{expect} <value>', "
                f"got {lines[consumed]!r}"
            )
        try:
            header[expect] = float(parts[1])
        except ValueError:
            raise FormatError(
                f"'{path}' line {consumed + 1}: non-numeric value {parts[1]!r}"
            ) from None
        consumed += 1

    ncols_f, nrows_f = header["ncols"], header["nrows"]
    if ncols_f != int(ncols_f) or nrows_f != int(nrows_f):
        raise FormatError(f"'{path}': ncols/nrows must be integers")
    ncols, nrows = int(ncols_f), int(nrows_f)
    if ncols < 1 or nrows < 1:
        raise FormatError(f"'{path}': ncols and nrows must be positive")
    if not header["cellsize"] > 0:
        raise FormatError(f"'{path}': cellsize must be positive")

    tokens = "\n".join(lines[consumed:]).split()
    if len(tokens) != nrows * ncols:
        raise FormatError(
            f"'{path}': expected {nrows * ncols} cell values, got {len(tokens)}"
        )
    try:
        values = np.array([float(t) for t in tokens], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"'{path}': non-numeric cell value ({exc})") from None

    return RasterGrid(
        ncols=ncols,
        nrows=nrows,
        x_origin=header["xllcorner"],
        y_origin=header["yllcorner"],
        cellsize=header["cellsize"],
        nodata_value=header["nodata_value"],
        values=values.reshape(nrows, ncols),
    )


def raster_text(grid: RasterGrid) -> str:
    """Serialize a grid to its canonical ASCII form."""
    out = io.StringIO()
    header_values = (
        grid.ncols,
        grid.nrows,
        grid.x_origin,
        grid.y_origin,
        grid.cellsize,
        grid.nodata_value,
    )
    for key, value in zip(_HEADER_OUT, header_values):
        if key in ("ncols", "nrows"):
            out.write(f"{key} {int(value)}\n")
        else:
            out.write(f"{key} {_fmt(value)}\n")
    for i in range(grid.nrows):
        out.write(" ".join(_fmt(v) for v in grid.values[i]))
        out.write("\n")
    return out.getvalue()


def save_raster(grid: RasterGrid, path: str | os.PathLike) -> None:
    _atomic_write_text(path, raster_text(grid))


# ---------------------------------------------------------------------------
# Point sets


def load_points(path: str | os.PathLike) -> PointSet3D:
    """Read a point CSV whose header starts with x,y,z; any further columns
    become named numeric attributes.  Duplicate (x, y) pairs are rejected."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read points '{path}': {exc}") from None
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    if not rows:
        raise FormatError(f"'{path}': empty point file")
    header = [c.strip() for c in rows[0]]
    if [c.lower() for c in header[:3]] != ["x", "y", "z"]:
        raise FormatError(f"'{path}': header must start with x,y,z, got {header[:3]}")
    extra = header[3:]
    if len(set(c.lower() for c in header)) != len(header):
        raise FormatError(f"'{path}': duplicate column names")
    body = rows[1:]
    if not body:
        raise FormatError(f"'{path}': no data rows")
    data = np.empty((len(body), len(header)), dtype=np.float64)
    for r, row in enumerate(body):
        if len(row) != len(header):
            raise FormatError(
                f"'{path}' row {r + 2}: expected {len(header)} fields, got {len(row)}"
            )
        for c, cell in enumerate(row):
            try:
                data[r, c] = float(cell)
            except ValueError:
                raise FormatError(
                    f"'{path}' row {r + 2}: non-numeric value {cell!r}"
                ) from None
    points = PointSet3D(
        x=data[:, 0],
        y=data[:, 1],
        z=data[:, 2],
        attributes={name: data[:, 3 + k] for k, name in enumerate(extra)},
    )
    points.check_unique_xy()
    return points


def points_text(points: PointSet3D) -> str:
    extra = [name for name in points.attributes if name != "z"]
    out = io.StringIO()
    out.write(",".join(["x", "y", "z"] + extra) + "\n")
    cols = [points.x, points.y, points.z] + [points.attributes[n] for n in extra]
    for row in zip(*cols):
        out.write(",".join(_fmt(v) for v in row) + "\n")
    return out.getvalue()


def save_points(points: PointSet3D, path: str | os.PathLike) -> None:
    _atomic_write_text(path, points_text(points))


# ---------------------------------------------------------------------------
# Networks


def load_network(path: str | os.PathLike) -> Network3D:
    """Read a network JSON document with ``nodes`` and ``edges`` arrays."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read network '{path}': {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"'{path}': malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise FormatError(f"'{path}': document must contain 'nodes' and 'edges'")

    nodes = []
    for k, rec in enumerate(doc["nodes"]):
        try:
            nodes.append(
                NetworkNode(
                    id=str(rec["id"]),
                    x=float(rec["x"]),
                    y=float(rec["y"]),
                    z=float(rec["z"]),
                    layer=str(rec["layer"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"'{path}' node {k}: {exc!r}") from None

    edges = []
    for k, rec in enumerate(doc["edges"]):
        try:
            length = rec.get("length")
            edges.append(
                (
                    str(rec["from"]),
                    str(rec["to"]),
                    None if length is None else float(length),
                    str(rec.get("kind", "road")),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"'{path}' edge {k}: {exc!r}") from None

    return Network3D(nodes, edges)


def network_text(network: Network3D) -> str:
    doc = {
        "nodes": [
            {"id": n.id, "x": n.x, "y": n.y, "z": n.z, "layer": n.layer}
            for n in sorted(network.nodes.values(), key=lambda n: n.id)
        ],
        "edges": [
            {"from": e.a, "to": e.b, "length": e.length, "kind": e.kind}
            for e in network.edges
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_network(network: Network3D, path: str | os.PathLike) -> None:
    _atomic_write_text(path, network_text(network))


# ---------------------------------------------------------------------------
# Address libraries


def load_address_library(path: str | os.PathLike) -> AddressLibrary:
    """Read an address CSV with header id,address,x,y,z."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read addresses '{path}': {exc}") from None
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    if not rows:
        raise FormatError(f"'{path}': empty address file")
    header = [c.strip().lower() for c in rows[0]]
    if header != ["id", "address", "x", "y", "z"]:
        raise FormatError(f"'{path}': header must be id,address,x,y,z, got {header}")
    parsed = []
    for r, row in enumerate(rows[1:]):
        if len(row) != 5:
            raise FormatError(f"'{path}' row {r + 2}: expected 5 fields, got {len(row)}")
        rid, addr = row[0].strip(), row[1].strip()
        if not rid:
            raise FormatError(f"'{path}' row {r + 2}: empty id")
        try:
            x, y, z = float(row[2]), float(row[3]), float(row[4])
        except ValueError:
            raise FormatError(f"'{path}' row {r + 2}: non-numeric coordinate") from None
        parsed.append((rid, addr, x, y, z))
    if not parsed:
        raise FormatError(f"'{path}': no data rows")
    return AddressLibrary.from_rows(parsed)


# ---------------------------------------------------------------------------
# Reports and provenance


def file_sha256(path: str | os.PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def provenance(input_paths: list[str | os.PathLike]) -> dict:
    """Provenance block for a report: input digests and a timestamp.

    The timestamp derives from the inputs (latest mtime) so identical inputs
    always yield an identical report; SOURCE_DATE_EPOCH overrides it.
    """
    inputs = []
    mtimes = [0.0]
    for p in input_paths:
        inputs.append({"path": Path(p).name, "sha256": file_sha256(p)})
        mtimes.append(os.path.getmtime(p))
    epoch_env = os.environ.get("SOURCE_DATE_EPOCH")
    epoch = float(epoch_env) if epoch_env else max(mtimes)
    stamp = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    return {
        "inputs": inputs,
        "generated": stamp.strftime("%Y-%m-%dT%H:%M:%SZ"),
        "tool": "geo3d",
    }


def save_report(report: AnalysisReport, path: str | os.PathLike) -> None:
    _atomic_write_text(path, report.to_json())


def load_report(path: str | os.PathLike) -> AnalysisReport:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read report '{path}': {exc}") from None
    return AnalysisReport.from_json(text)
