"""Core data types shared by all analysis modules.

All types are immutable after construction (numpy buffers are marked
read-only), so instances can be shared freely between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from geo3d.errors import AnalysisError, FormatError

NODE_LAYERS = ("outdoor", "indoor")
EDGE_KINDS = ("road", "corridor", "connector")

# Preference order when collapsing parallel edges of equal length.
_KIND_RANK = {"road": 0, "corridor": 1, "connector": 2}


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def cell_center(
    x_origin: float, y_origin: float, cellsize: float, nrows: int, row: int, col: int
) -> tuple[float, float]:
    """World coordinates of a cell center.

    Row 0 is the northernmost row; the origin is the lower-left corner of the
    grid, so row i sits ``(nrows - i - 0.5)`` cells above ``y_origin``.
    """
    x = x_origin + (col + 0.5) * cellsize
    y = y_origin + (nrows - row - 0.5) * cellsize
    return x, y


@dataclass(frozen=True)
class GridSpec:
    """Georeferencing of a regular grid: extent, resolution and nodata marker."""

    x_origin: float
    y_origin: float
    cellsize: float
    ncols: int
    nrows: int
    nodata_value: float = -9999.0

    def __post_init__(self) -> None:
        if self.ncols < 1 or self.nrows < 1:
            raise AnalysisError("grid must have at least one row and column")
        if not self.cellsize > 0:
            raise AnalysisError("cellsize must be positive")

    def x_centers(self) -> np.ndarray:
        j = np.arange(self.ncols, dtype=np.float64)
        return self.x_origin + (j + 0.5) * self.cellsize

    def y_centers(self) -> np.ndarray:
        """Cell-center y coordinates, row 0 (north) first."""
        i = np.arange(self.nrows, dtype=np.float64)
        return self.y_origin + (self.nrows - i - 0.5) * self.cellsize


@dataclass(frozen=True)
class RasterGrid:
    """Regular value grid with lower-left-corner georeferencing.

    ``values`` has shape (nrows, ncols) with row 0 the northernmost row,
    matching the on-disk ASCII grid layout.  Cells equal to ``nodata_value``
    (exact comparison; NaN matches NaN) are treated as missing by every
    analysis.
    """

    ncols: int
    nrows: int
    x_origin: float
    y_origin: float
    cellsize: float
    nodata_value: float
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.ncols < 1 or self.nrows < 1:
            raise FormatError("grid must have at least one row and column")
        if not self.cellsize > 0:
            raise FormatError("cellsize must be positive")
        values = np.asarray(self.values, dtype=np.float64)
        if values.size != self.nrows * self.ncols:
            raise FormatError(
                "value count mismatch: expected "
                f"{self.nrows * self.ncols}, got {values.size}"
            )
        object.__setattr__(self, "values", _readonly(values.reshape(self.nrows, self.ncols)))

    @property
    def spec(self) -> GridSpec:
        return GridSpec(
            self.x_origin, self.y_origin, self.cellsize,
            self.ncols, self.nrows, self.nodata_value,
        )

    def missing_mask(self) -> np.ndarray:
        """Boolean mask of missing cells, shape (nrows, ncols)."""
        if np.isnan(self.nodata_value):
            return np.isnan(self.values)
        return self.values == self.nodata_value

    def cell_center(self, row: int, col: int) -> tuple[float, float]:
        if not (0 <= row < self.nrows and 0 <= col < self.ncols):
            raise IndexError(f"cell ({row}, {col}) out of bounds")
        return cell_center(self.x_origin, self.y_origin, self.cellsize, self.nrows, row, col)

    def with_values(self, values: np.ndarray, nodata_value: float | None = None) -> "RasterGrid":
        """New grid with the same georeferencing and different cell values."""
        return RasterGrid(
            ncols=self.ncols,
            nrows=self.nrows,
            x_origin=self.x_origin,
            y_origin=self.y_origin,
            cellsize=self.cellsize,
            nodata_value=self.nodata_value if nodata_value is None else nodata_value,
            values=values,
        )

    @staticmethod
    def from_spec(spec: GridSpec, values: np.ndarray) -> "RasterGrid":
        return RasterGrid(
            ncols=spec.ncols,
            nrows=spec.nrows,
            x_origin=spec.x_origin,
            y_origin=spec.y_origin,
            cellsize=spec.cellsize,
            nodata_value=spec.nodata_value,
            values=values,
        )


@dataclass(frozen=True)
class PointSet3D:
    """Scattered 3D points with named numeric attribute columns.

    ``z`` is always addressable as attribute ``"z"``.  Planimetric (x, y)
    uniqueness is enforced by the file loader, not the constructor, so
    synthetic point sets can be assembled freely in code.
    """

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    attributes: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = _readonly(np.atleast_1d(self.x))
        y = _readonly(np.atleast_1d(self.y))
        z = _readonly(np.atleast_1d(self.z))
        if not (x.shape == y.shape == z.shape) or x.ndim != 1:
            raise FormatError("x, y, z must be 1-d arrays of equal length")
        attrs = {"z": z}
        for name, col in self.attributes.items():
            col = _readonly(np.atleast_1d(col))
            if col.shape != x.shape:
                raise FormatError(f"attribute '{name}' has wrong length")
            attrs[name] = col
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", attrs["z"])
        object.__setattr__(self, "attributes", attrs)

    def __len__(self) -> int:
        return self.x.shape[0]

    def attribute(self, name: str) -> np.ndarray:
        try:
            return self.attributes[name]
        except KeyError:
            raise AnalysisError(f"unknown attribute '{name}'") from None

    def check_unique_xy(self) -> None:
        """Raise if two points share identical planimetric coordinates."""
        seen: dict[tuple[float, float], int] = {}
        for i, (xi, yi) in enumerate(zip(self.x, self.y)):
            key = (float(xi), float(yi))
            if key in seen:
                raise FormatError(
                    f"duplicate planimetric coordinate {key} at rows "
                    f"{seen[key]} and {i}"
                )
            seen[key] = i


@dataclass(frozen=True)
class NetworkNode:
    id: str
    x: float
    y: float
    z: float
    layer: str

    def __post_init__(self) -> None:
        if self.layer not in NODE_LAYERS:
            raise FormatError(f"node '{self.id}': unknown layer '{self.layer}'")

    @property
    def location(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class NetworkEdge:
    """Undirected edge; endpoint ids are stored in sorted order."""

    a: str
    b: str
    length: float
    kind: str


class Network3D:
    """Layered undirected graph of 3D nodes and weighted edges.

    Construction validates every documented invariant: endpoints must exist,
    self-loops are rejected, lengths are nonnegative (defaulting to 3D
    Euclidean distance), any edge joining an outdoor node to an indoor node
    must be a connector, and parallel edges collapse to the shortest one.
    """

    def __init__(self, nodes: Sequence[NetworkNode], edges: Sequence[tuple]) -> None:
        self.nodes: dict[str, NetworkNode] = {}
        for node in nodes:
            if node.id in self.nodes:
                raise FormatError(f"duplicate node id '{node.id}'")
            self.nodes[node.id] = node

        best: dict[tuple[str, str], tuple[float, int, str]] = {}
        for from_id, to_id, length, kind in edges:
            for end in (from_id, to_id):
                if end not in self.nodes:
                    raise FormatError(f"dangling endpoint '{end}'")
            if from_id == to_id:
                raise FormatError(f"self-loop at node '{from_id}'")
            if kind not in EDGE_KINDS:
                raise FormatError(f"unknown edge kind '{kind}'")
            na, nb = self.nodes[from_id], self.nodes[to_id]
            if na.layer != nb.layer and kind != "connector":
                raise FormatError(
                    f"cross-layer edge {from_id}-{to_id} must be connector, got '{kind}'"
                )
            if length is None:
                dx = na.x - nb.x
                dy = na.y - nb.y
                dz = na.z - nb.z
                length = float(np.sqrt(dx * dx + dy * dy + dz * dz))
            length = float(length)
            if length < 0:
                raise FormatError(f"negative length on edge {from_id}-{to_id}")
            key = (from_id, to_id) if from_id < to_id else (to_id, from_id)
            cand = (length, _KIND_RANK[kind], kind)
            if key not in best or cand[:2] < best[key][:2]:
                best[key] = cand

        self.edges: list[NetworkEdge] = [
            NetworkEdge(a, b, length, kind)
            for (a, b), (length, _, kind) in sorted(best.items())
        ]

        adjacency: dict[str, list[tuple[str, float, str]]] = {nid: [] for nid in self.nodes}
        for e in self.edges:
            adjacency[e.a].append((e.b, e.length, e.kind))
            adjacency[e.b].append((e.a, e.length, e.kind))
        for nid in adjacency:
            adjacency[nid].sort()
        self.adjacency = adjacency

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def node(self, node_id: str) -> NetworkNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise AnalysisError(f"unknown node id '{node_id}'") from None

    def edge_between(self, a: str, b: str) -> NetworkEdge | None:
        key = (a, b) if a < b else (b, a)
        for e in self.edges:
            if (e.a, e.b) == key:
                return e
        return None


def normalize_address(text: str) -> list[str]:
    """Deterministic address normalization: case-fold, punctuation to
    spaces, collapse whitespace, split on spaces."""
    cleaned = "".join(c if c.isalnum() else " " for c in text.casefold())
    return cleaned.split()


@dataclass(frozen=True)
class AddressRecord:
    id: str
    address: str
    x: float
    y: float
    z: float
    tokens: tuple[str, ...]

    @property
    def location(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


class AddressLibrary:
    """Standard address records with coordinates, tokenized at load time."""

    def __init__(self, records: Sequence[AddressRecord]) -> None:
        self.records: tuple[AddressRecord, ...] = tuple(records)
        self.by_id: dict[str, AddressRecord] = {}
        for rec in self.records:
            if rec.id in self.by_id:
                raise FormatError(f"duplicate id '{rec.id}'")
            if not rec.address:
                raise FormatError(f"record '{rec.id}': empty address")
            self.by_id[rec.id] = rec

    def __len__(self) -> int:
        return len(self.records)

    @staticmethod
    def from_rows(rows: Sequence[tuple[str, str, float, float, float]]) -> "AddressLibrary":
        return AddressLibrary(
            [
                AddressRecord(rid, addr, x, y, z, tuple(normalize_address(addr)))
                for rid, addr, x, y, z in rows
            ]
        )


@dataclass(frozen=True)
class AnalysisReport:
    """Persistable record of one analysis run.

    Serializes to JSON with keys ``analysis``, ``parameters``, ``outputs``,
    ``provenance`` and reloads losslessly.
    """

    analysis: str
    parameters: dict
    outputs: dict
    provenance: dict

    def to_json(self) -> str:
        payload = {
            "analysis": self.analysis,
            "parameters": self.parameters,
            "outputs": self.outputs,
            "provenance": self.provenance,
        }
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"

    @staticmethod
    def from_json(text: str) -> "AnalysisReport":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"malformed report: {exc}") from None
        missing = {"analysis", "parameters", "outputs", "provenance"} - set(payload)
        if missing:
            raise FormatError(f"report missing keys: {sorted(missing)}")
        return AnalysisReport(
            analysis=payload["analysis"],
            parameters=payload["parameters"],
            outputs=payload["outputs"],
            provenance=payload["provenance"],
        )
