"""
Domain models for backends, tracing verdicts and assembly reports.
"""
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.domain.coupling.models import CouplingGraph


class BackendRecord(BaseModel):
    """A registry entry: one backend and its full coupling map."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    num_qubits: int = Field(..., gt=0)
    topology: CouplingGraph

    @model_validator(mode="after")
    def _check_endpoints(self) -> "BackendRecord":
        if self.topology.max_qubit() >= self.num_qubits:
            raise ValueError(
                f"backend {self.name}: edge endpoint {self.topology.max_qubit()} "
                f"outside {self.num_qubits} qubits"
            )
        return self


class VerdictKind(str, Enum):
    """Outcome classes of tracing one derived graph."""
    UNIQUE = "unique"
    AMBIGUOUS = "ambiguous"
    UNMATCHED = "unmatched"


class TraceOutcome(BaseModel):
    """Verdict of tracing one derived graph against a registry."""
    model_config = ConfigDict(frozen=True)

    verdict: VerdictKind
    candidates: Tuple[str, ...] = ()
    matched_edges: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_candidates(self) -> "TraceOutcome":
        count = len(self.candidates)
        expected = {
            VerdictKind.UNIQUE: count == 1,
            VerdictKind.AMBIGUOUS: count >= 2,
            VerdictKind.UNMATCHED: count == 0,
        }[self.verdict]
        if not expected:
            raise ValueError(f"{self.verdict.value} verdict with {count} candidate(s)")
        return self

    @property
    def backend(self) -> Optional[str]:
        """The traced backend for a unique verdict."""
        return self.candidates[0] if self.verdict == VerdictKind.UNIQUE else None


class TracedCircuit(BaseModel):
    """One circuit of a pool with its verdict."""
    source_name: str
    outcome: TraceOutcome
    derived: CouplingGraph


class PoolTraceReport(BaseModel):
    """Tracing results for a pool of circuits."""
    outcomes: List[TracedCircuit] = Field(default_factory=list)
    accuracy_percent: Optional[float] = None
    per_backend_accuracy: Optional[Dict[str, float]] = None

    def verdict_counts(self) -> Dict[str, int]:
        counts = {kind.value: 0 for kind in VerdictKind}
        for item in self.outcomes:
            counts[item.outcome.verdict.value] += 1
        return counts


class CircuitGraph(BaseModel):
    """A derived graph tagged with the circuit it came from."""
    source_name: str
    graph: CouplingGraph


class AssemblyReport(BaseModel):
    """Union of derived graphs with an optional coverage curve."""
    assembled: CouplingGraph
    per_circuit: List[CircuitGraph] = Field(default_factory=list)
    coverage_curve: List[Tuple[int, float]] = Field(default_factory=list)

    @property
    def final_coverage(self) -> Optional[float]:
        return self.coverage_curve[-1][1] if self.coverage_curve else None
