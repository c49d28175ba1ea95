"""
Domain models for the synthetic transpilation oracle.
"""
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.domain.circuit.models import ParsedCircuit
from src.domain.coupling.models import CouplingGraph, canonical_edge
from src.domain.swap.models import EMITTABLE_KINDS, SwapKind


class TopologyKind(str, Enum):
    """Coupling topologies the oracle can build."""
    LINEAR = "linear"
    T_SHAPE = "tshape"
    H_SHAPE = "hshape"
    LOOP = "loop"
    EXPLICIT = "explicit"


class TopologySpec(BaseModel):
    """A topology by family and size, or an explicit graph."""
    model_config = ConfigDict(frozen=True)

    kind: TopologyKind
    size: Optional[int] = Field(None, gt=0)
    graph: Optional[CouplingGraph] = None

    @model_validator(mode="after")
    def _check_arguments(self) -> "TopologySpec":
        if self.kind == TopologyKind.EXPLICIT and self.graph is None:
            raise ValueError("explicit topology requires a graph")
        if self.kind != TopologyKind.EXPLICIT and self.size is None:
            raise ValueError(f"{self.kind.value} topology requires a size")
        return self

    @classmethod
    def linear(cls, n: int) -> "TopologySpec":
        return cls(kind=TopologyKind.LINEAR, size=n)

    @classmethod
    def t_shape(cls, n: int) -> "TopologySpec":
        return cls(kind=TopologyKind.T_SHAPE, size=n)

    @classmethod
    def h_shape(cls, n: int) -> "TopologySpec":
        return cls(kind=TopologyKind.H_SHAPE, size=n)

    @classmethod
    def loop(cls, n: int) -> "TopologySpec":
        return cls(kind=TopologyKind.LOOP, size=n)

    @classmethod
    def explicit(cls, graph: CouplingGraph) -> "TopologySpec":
        return cls(kind=TopologyKind.EXPLICIT, graph=graph)


class LayoutMode(str, Enum):
    IDENTITY = "identity"
    RANDOM = "random"


class SynthConfig(BaseModel):
    """Scenario control for one synthetic circuit."""
    model_config = ConfigDict(frozen=True)

    num_logical: int = Field(..., ge=1)
    num_2q_ops: int = Field(0, ge=0)
    layout_mode: LayoutMode = LayoutMode.IDENTITY
    seed: int = 0
    disguise: Tuple[SwapKind, ...] = (SwapKind.DIRECT,)
    # Logical qubits >= user_boundary form an appended user program
    user_boundary: Optional[int] = Field(None, ge=1)
    enumerate_edges: bool = False
    swap_only_edges: Tuple[Tuple[int, int], ...] = ()
    # Logical (control, target) pairs routed before the random operations
    operations: Tuple[Tuple[int, int], ...] = ()

    @field_validator("disguise")
    @classmethod
    def _check_disguise(cls, value: Tuple[SwapKind, ...]) -> Tuple[SwapKind, ...]:
        if not value:
            raise ValueError("disguise set must not be empty")
        unsupported = [k.value for k in value if k not in EMITTABLE_KINDS]
        if unsupported:
            raise ValueError(f"cannot emit SWAPs as {unsupported}")
        return tuple(dict.fromkeys(value))

    @field_validator("swap_only_edges")
    @classmethod
    def _canonical_edges(cls, value: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted({canonical_edge(a, b) for a, b in value}))

    @model_validator(mode="after")
    def _check_logical_references(self) -> "SynthConfig":
        if self.user_boundary is not None and self.user_boundary >= self.num_logical:
            raise ValueError("user_boundary must leave at least one user qubit")
        for control, target in self.operations:
            if control == target or not (0 <= control < self.num_logical and 0 <= target < self.num_logical):
                raise ValueError(f"operation ({control}, {target}) is not a pair of distinct logical qubits")
        return self


class SynthesisResult(BaseModel):
    """A synthetic circuit with its ground truth."""
    circuit: ParsedCircuit
    ground_truth: CouplingGraph
    layout: Dict[int, int]
    # Instruction index where the appended user program begins
    user_start: Optional[int] = None
    user_logical: List[int] = Field(default_factory=list)
