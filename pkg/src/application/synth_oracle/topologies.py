"""
Coupling topologies for synthetic fixtures.
"""
from collections import deque
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx

from src.domain.coupling.models import CouplingGraph, Edge
from src.domain.synthesis.models import TopologyKind, TopologySpec
from src.shared.exceptions import SynthesisError


def _path(nodes: List[int]) -> List[Edge]:
    return [(nodes[k], nodes[k + 1]) for k in range(len(nodes) - 1)]


def _linear(n: int) -> List[Edge]:
    return _path(list(range(n)))


def _loop(n: int) -> List[Edge]:
    if n < 3:
        raise SynthesisError(f"a loop needs at least 3 qubits, got {n}")
    return _linear(n) + [(n - 1, 0)]


def _t_shape(n: int) -> List[Edge]:
    # Bar 0..b-1 with a stem b..n-1 hanging off the middle of the bar
    if n < 5:
        raise SynthesisError(f"a T shape needs at least 5 qubits, got {n}")
    bar = (n + 1) // 2
    middle = (bar - 1) // 2
    return _path(list(range(bar))) + _path([middle] + list(range(bar, n)))


def _h_shape(n: int) -> List[Edge]:
    # Two columns joined at their middles, through one bridge qubit when n is odd
    if n < 6:
        raise SynthesisError(f"an H shape needs at least 6 qubits, got {n}")
    column = n // 2 if n % 2 == 0 else (n - 1) // 2
    middle = (column - 1) // 2
    left = list(range(column))
    right = list(range(column, 2 * column))
    edges = _path(left) + _path(right)
    if n % 2 == 0:
        edges.append((left[middle], right[middle]))
    else:
        edges += [(left[middle], n - 1), (n - 1, right[middle])]
    return edges


_FAMILIES = {
    TopologyKind.LINEAR: _linear,
    TopologyKind.LOOP: _loop,
    TopologyKind.T_SHAPE: _t_shape,
    TopologyKind.H_SHAPE: _h_shape,
}


def topology_nodes(graph: CouplingGraph) -> List[int]:
    """Qubits a synthetic circuit may place logical qubits on."""
    if graph.edges:
        return graph.qubits()
    return list(range(graph.num_qubits or 0))


def build_topology(spec: TopologySpec) -> CouplingGraph:
    """
    Resolve a topology spec to a connected coupling graph.

    Raises:
        SynthesisError: If the graph is empty or disconnected
    """
    if spec.kind == TopologyKind.EXPLICIT:
        graph = spec.graph
        if graph.num_qubits is None:
            graph = CouplingGraph(edges=graph.edges, num_qubits=graph.max_qubit() + 1)
        elif graph.max_qubit() >= graph.num_qubits:
            raise SynthesisError(f"edge endpoint {graph.max_qubit()} outside {graph.num_qubits} qubits")
    else:
        graph = CouplingGraph(edges=_FAMILIES[spec.kind](spec.size), num_qubits=spec.size)

    nodes = topology_nodes(graph)
    if not nodes:
        raise SynthesisError("topology has no qubits")
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(nodes)
    nx_graph.add_edges_from(graph.edges)
    if not nx.is_connected(nx_graph):
        raise SynthesisError(f"{spec.kind.value} topology is not connected")
    return graph


def adjacency(graph: CouplingGraph) -> Dict[int, List[int]]:
    """Sorted neighbour lists."""
    neighbours: Dict[int, Set[int]] = {}
    for a, b in graph.edges:
        neighbours.setdefault(a, set()).add(b)
        neighbours.setdefault(b, set()).add(a)
    return {q: sorted(ns) for q, ns in neighbours.items()}


def grow_region(
    neighbours: Dict[int, List[int]],
    seeds: Iterable[int],
    size: int,
    allowed: Optional[Set[int]] = None,
) -> List[int]:
    """
    Breadth-first region of `size` qubits grown from seed qubits.

    Neighbours are visited in ascending order. Returns fewer qubits when the
    reachable part of `allowed` is smaller than `size`.
    """
    region: List[int] = []
    seen: Set[int] = set()
    queue = deque()
    for seed in seeds:
        if seed not in seen and (allowed is None or seed in allowed):
            seen.add(seed)
            queue.append(seed)
    while queue and len(region) < size:
        q = queue.popleft()
        region.append(q)
        for n in neighbours.get(q, ()):
            if n not in seen and (allowed is None or n in allowed):
                seen.add(n)
                queue.append(n)
    return sorted(region)


def cover_regions(graph: CouplingGraph, region_size: int) -> List[List[int]]:
    """
    Connected qubit regions whose induced subgraphs together cover every edge.

    Each region is grown from the smallest still-uncovered edge.

    Args:
        graph: Backend coupling graph
        region_size: Qubits per region, at least 2

    Returns:
        Sorted qubit lists, one per region
    """
    if region_size < 2:
        raise SynthesisError("regions need at least 2 qubits to cover an edge")
    neighbours = adjacency(graph)
    uncovered: Set[Tuple[int, int]] = set(graph.edges)
    regions: List[List[int]] = []
    while uncovered:
        a, b = min(uncovered)
        region = grow_region(neighbours, (a, b), region_size)
        regions.append(region)
        uncovered -= graph.induced(region).edges
    return regions


def shortest_path(neighbours: Dict[int, List[int]], source: int, target: int, allowed: Optional[Set[int]] = None) -> List[int]:
    """
    Breadth-first shortest path; ties go to the smallest next qubit.

    Raises:
        SynthesisError: If target is unreachable
    """
    parents: Dict[int, Optional[int]] = {source: None}
    queue = deque([source])
    while queue:
        q = queue.popleft()
        if q == target:
            break
        for n in neighbours.get(q, ()):
            if n not in parents and (allowed is None or n in allowed):
                parents[n] = q
                queue.append(n)
    if target not in parents:
        raise SynthesisError(f"no path from {source} to {target}")
    path = [target]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    return path[::-1]
