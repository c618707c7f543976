"""Address matching and geocode-to-route composition."""

from __future__ import annotations

from dataclasses import dataclass

from geo3d import kernels
from geo3d.errors import GeocodeError
from geo3d.geodata.types import AddressLibrary, Network3D, normalize_address
from geo3d.network.routing import RouteResult, indoor_outdoor_route


@dataclass(frozen=True)
class GeocodeMatch:
    record_id: str
    score: float
    location: tuple[float, float, float]


def _score(query_tokens: tuple[str, ...], record_tokens: tuple[str, ...]) -> float:
    """0.5 * token-set Jaccard + 0.5 * (1 - normalized edit distance).

    Exact equality of the normalized token sequences forces 1.0, so a perfect
    match always outranks near misses.
    """
    if query_tokens == record_tokens:
        return 1.0
    qset, rset = set(query_tokens), set(record_tokens)
    union = qset | rset
    jaccard = len(qset & rset) / len(union) if union else 0.0
    a, b = " ".join(query_tokens), " ".join(record_tokens)
    longest = max(len(a), len(b))
    lev = kernels.levenshtein(a, b) / longest if longest else 0.0
    return 0.5 * jaccard + 0.5 * (1.0 - lev)


def geocode(library: AddressLibrary, query: str, k: int = 5) -> list[GeocodeMatch]:
    """Top-k matches, sorted by descending score then ascending record id."""
    if len(library) == 0:
        raise GeocodeError("empty address library")
    if k < 1:
        raise GeocodeError("k must be positive")
    query_tokens = tuple(normalize_address(query))
    if not query_tokens:
        raise GeocodeError("empty query")
    scored = [
        GeocodeMatch(rec.id, _score(query_tokens, rec.tokens), rec.location)
        for rec in library.records
    ]
    scored.sort(key=lambda match: (-match.score, match.record_id))
    return scored[:k]


def snap_to_node(net: Network3D, location: tuple[float, float, float]) -> str:
    """Nearest network node by 3D Euclidean distance; ties by ascending id."""
    x, y, z = location
    best_id = None
    best_d2 = float("inf")
    for node_id in sorted(net.nodes):
        node = net.nodes[node_id]
        d2 = (node.x - x) ** 2 + (node.y - y) ** 2 + (node.z - z) ** 2
        if d2 < best_d2:
            best_d2 = d2
            best_id = node_id
    return best_id


def route_between_addresses(
    net: Network3D, library: AddressLibrary, from_addr: str, to_addr: str
) -> tuple[GeocodeMatch, GeocodeMatch, RouteResult]:
    """Geocode both addresses, snap to the network, and route between them."""
    matches_from = geocode(library, from_addr, k=1)
    matches_to = geocode(library, to_addr, k=1)
    if not matches_from or matches_from[0].score <= 0.0:
        raise GeocodeError(f"geocode failure for '{from_addr}'")
    if not matches_to or matches_to[0].score <= 0.0:
        raise GeocodeError(f"geocode failure for '{to_addr}'")
    top_from, top_to = matches_from[0], matches_to[0]
    start = snap_to_node(net, top_from.location)
    end = snap_to_node(net, top_to.location)
    return top_from, top_to, indoor_outdoor_route(net, start, end)
