"""Three-dimensional network analysis: indices, routing, address matching."""

from geo3d.network.geocode import (
    GeocodeMatch,
    geocode,
    route_between_addresses,
    snap_to_node,
)
from geo3d.network.indices import (
    NetworkIndices,
    connectivity,
    measure_indices,
    neighbors,
)
from geo3d.network.routing import RouteResult, indoor_outdoor_route, shortest_path

__all__ = [
    "GeocodeMatch",
    "NetworkIndices",
    "RouteResult",
    "connectivity",
    "geocode",
    "indoor_outdoor_route",
    "measure_indices",
    "neighbors",
    "route_between_addresses",
    "shortest_path",
    "snap_to_node",
]
