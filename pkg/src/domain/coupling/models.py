"""
Coupling graphs and the swap-history tracker.
"""
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

Edge = Tuple[int, int]


def canonical_edge(a: int, b: int) -> Edge:
    """Return the (min, max) form of an undirected pair."""
    return (a, b) if a < b else (b, a)


class CouplingGraph(BaseModel):
    """Undirected edge set over integer-labelled physical qubits."""
    model_config = ConfigDict(frozen=True)

    edges: FrozenSet[Edge] = frozenset()
    num_qubits: Optional[int] = None

    @field_validator("edges", mode="before")
    @classmethod
    def _canonicalize(cls, value: Any) -> FrozenSet[Edge]:
        edges = set()
        for pair in value or ():
            a, b = (int(q) for q in pair)
            if a == b:
                raise ValueError(f"self-loop edge ({a},{b})")
            if a < 0 or b < 0:
                raise ValueError(f"negative qubit index in edge ({a},{b})")
            edges.add(canonical_edge(a, b))
        return frozenset(edges)

    @field_serializer("edges")
    def _serialize_edges(self, edges: FrozenSet[Edge]) -> List[List[int]]:
        return [list(edge) for edge in sorted(edges)]

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], num_qubits: Optional[int] = None) -> "CouplingGraph":
        return cls(edges=list(edges), num_qubits=num_qubits)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CouplingGraph":
        return cls(edges=data.get("edges", []), num_qubits=data.get("num_qubits"))

    def to_dict(self) -> Dict[str, Any]:
        """Canonical JSON-ready form: sorted pairs, sorted keys."""
        return {"edges": self.sorted_edges(as_lists=True), "num_qubits": self.num_qubits}

    def sorted_edges(self, as_lists: bool = False) -> List[Any]:
        ordered = sorted(self.edges)
        return [list(edge) for edge in ordered] if as_lists else ordered

    def qubits(self) -> List[int]:
        return sorted({q for edge in self.edges for q in edge})

    def max_qubit(self) -> int:
        """Largest endpoint, -1 for an empty graph."""
        return max((b for _, b in self.edges), default=-1)

    def union(self, other: "CouplingGraph") -> "CouplingGraph":
        sizes = [n for n in (self.num_qubits, other.num_qubits) if n is not None]
        return CouplingGraph(edges=self.edges | other.edges, num_qubits=max(sizes) if sizes else None)

    def induced(self, nodes: Iterable[int]) -> "CouplingGraph":
        """Subgraph keeping edges with both endpoints in nodes."""
        keep = set(nodes)
        return CouplingGraph(
            edges=[e for e in self.edges if e[0] in keep and e[1] in keep],
            num_qubits=self.num_qubits,
        )

    def issubset(self, other: "CouplingGraph") -> bool:
        return self.edges <= other.edges

    def has_edge(self, a: int, b: int) -> bool:
        return canonical_edge(a, b) in self.edges

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        if self.num_qubits is not None:
            graph.add_nodes_from(range(self.num_qubits))
        graph.add_edges_from(self.edges)
        return graph

    def __len__(self) -> int:
        return len(self.edges)


class SwapHistory:
    """
    Symmetric boolean tracker of qubit pairs that have undergone a SWAP.

    Indexed by physical qubit over the declared universe; the diagonal stays
    false and entries are never cleared.
    """

    def __init__(self, num_qubits: int):
        self.num_qubits = num_qubits
        self.flags = np.zeros((num_qubits, num_qubits), dtype=bool)

    def mark(self, a: int, b: int) -> None:
        if a == b:
            return
        self.flags[a, b] = True
        self.flags[b, a] = True

    def is_marked(self, a: int, b: int) -> bool:
        return bool(self.flags[a, b])

    def marked_pairs(self) -> List[Edge]:
        rows, cols = np.nonzero(np.triu(self.flags, k=1))
        return [(int(a), int(b)) for a, b in zip(rows, cols)]

    def local_view(self, order: Sequence[int]) -> np.ndarray:
        """History restricted to the given qubits, rows and columns in that order."""
        index = np.asarray(order, dtype=int)
        return self.flags[np.ix_(index, index)].copy()

    def __repr__(self) -> str:
        return f"SwapHistory(num_qubits={self.num_qubits}, marked={self.marked_pairs()})"
