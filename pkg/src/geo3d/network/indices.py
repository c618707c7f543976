"""Network measurement indices and connectivity structure."""

from __future__ import annotations

from dataclasses import dataclass

from geo3d.errors import AnalysisError
from geo3d.geodata.types import Network3D


@dataclass(frozen=True)
class NetworkIndices:
    """Classical graph-measure indices.

    Two alpha variants are reported: ``alpha_paper`` halves the loop count
    before normalizing (and can go negative), ``alpha_standard`` is the
    conventional loop ratio (NaN for n = 2, where its denominator vanishes).
    All percentages.
    """

    m: int
    n: int
    p_subgraphs: int
    beta: float
    k_loops: int
    alpha_paper: float
    alpha_standard: float
    gamma: float


def connectivity(net: Network3D) -> list[list[str]]:
    """Connected components, each sorted by id, ordered by smallest member."""
    seen: set[str] = set()
    components: list[list[str]] = []
    for start in sorted(net.nodes):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        component = []
        while stack:
            current = stack.pop()
            component.append(current)
            for neighbor, _, _ in net.adjacency[current]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    stack.append(neighbor)
        components.append(sorted(component))
    components.sort(key=lambda c: c[0])
    return components


def neighbors(net: Network3D, node_id: str) -> list[str]:
    """Ids adjacent to the given node, ascending."""
    net.node(node_id)
    return sorted({other for other, _, _ in net.adjacency[node_id]})


def measure_indices(net: Network3D) -> NetworkIndices:
    """Beta, loop (k), alpha and gamma indices of the network."""
    n = net.node_count
    m = net.edge_count
    if n < 2:
        raise AnalysisError("index computation requires at least 2 nodes")
    p = len(connectivity(net))
    k = m - n + p
    max_lines = n * (n - 1) / 2.0
    alpha_paper = ((k / 2.0) - (n - 1)) / max_lines * 100.0
    alpha_denominator = max_lines - (n - 1)
    alpha_standard = (
        k / alpha_denominator * 100.0 if alpha_denominator != 0 else float("nan")
    )
    return NetworkIndices(
        m=m,
        n=n,
        p_subgraphs=p,
        beta=m / n,
        k_loops=k,
        alpha_paper=alpha_paper,
        alpha_standard=alpha_standard,
        gamma=m / max_lines * 100.0,
    )
