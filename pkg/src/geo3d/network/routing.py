"""Shortest-path routing over the layered network.

Dijkstra with a binary heap; frontier entries are (distance, node id) so
equal-distance pops resolve to the lexicographically smaller id, and
predecessors update only on strict improvement.  Routes are therefore fully
deterministic for a given network.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from geo3d.errors import NoRouteError
from geo3d.geodata.types import Network3D


@dataclass(frozen=True)
class RouteResult:
    node_path: tuple[str, ...]
    total_length: float
    layer_transitions: int


def _dijkstra(net: Network3D, start: str, end: str) -> list[str]:
    dist: dict[str, float] = {start: 0.0}
    prev: dict[str, str] = {}
    done: set[str] = set()
    frontier: list[tuple[float, str]] = [(0.0, start)]
    while frontier:
        d, current = heapq.heappop(frontier)
        if current in done:
            continue
        done.add(current)
        if current == end:
            break
        for neighbor, length, _ in net.adjacency[current]:
            candidate = d + length
            if neighbor not in dist or candidate < dist[neighbor]:
                dist[neighbor] = candidate
                prev[neighbor] = current
                heapq.heappush(frontier, (candidate, neighbor))
    if end not in done:
        raise NoRouteError(f"no route from '{start}' to '{end}'")
    path = [end]
    while path[-1] != start:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def _route_from_path(net: Network3D, path: list[str]) -> RouteResult:
    total = 0.0
    transitions = 0
    for a, b in zip(path, path[1:]):
        entry = next(e for e in net.adjacency[a] if e[0] == b)
        total += entry[1]
        if entry[2] == "connector":
            transitions += 1
    return RouteResult(
        node_path=tuple(path), total_length=total, layer_transitions=transitions
    )


def shortest_path(net: Network3D, start: str, end: str) -> RouteResult:
    """Minimum-total-length route between two nodes."""
    net.node(start)
    net.node(end)
    if start == end:
        return RouteResult(node_path=(start,), total_length=0.0, layer_transitions=0)
    return _route_from_path(net, _dijkstra(net, start, end))


def indoor_outdoor_route(net: Network3D, start: str, end: str) -> RouteResult:
    """Shortest route across the full multi-layer graph.

    Layer changes only ever happen on connector edges (a Network3D
    invariant), so layer_transitions counts exactly the indoor/outdoor
    transitions along the route.
    """
    return shortest_path(net, start, end)
