"""Uniform data access layer: typed containers plus file I/O and rendering."""

from geo3d.geodata.io import (
    file_sha256,
    load_address_library,
    load_network,
    load_points,
    load_raster,
    load_report,
    network_text,
    points_text,
    provenance,
    raster_text,
    save_network,
    save_points,
    save_raster,
    save_report,
)
from geo3d.geodata.render import heatmap_svg, render_heatmap
from geo3d.geodata.types import (
    AddressLibrary,
    AddressRecord,
    AnalysisReport,
    GridSpec,
    Network3D,
    NetworkEdge,
    NetworkNode,
    PointSet3D,
    RasterGrid,
    cell_center,
    normalize_address,
)

__all__ = [
    "AddressLibrary",
    "AddressRecord",
    "AnalysisReport",
    "GridSpec",
    "Network3D",
    "NetworkEdge",
    "NetworkNode",
    "PointSet3D",
    "RasterGrid",
    "cell_center",
    "file_sha256",
    "heatmap_svg",
    "load_address_library",
    "load_network",
    "load_points",
    "load_raster",
    "load_report",
    "network_text",
    "normalize_address",
    "points_text",
    "provenance",
    "raster_text",
    "render_heatmap",
    "save_network",
    "save_points",
    "save_raster",
    "save_report",
]
