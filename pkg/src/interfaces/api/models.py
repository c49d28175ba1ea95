"""
Pydantic models for the forensics HTTP API.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from src.domain.coupling.models import CouplingGraph
from src.domain.swap.models import Diagnostic, SwapEvent


class CircuitPayload(BaseModel):
    """One circuit submitted as OpenQASM text."""
    name: str = Field(..., min_length=1, description="Source name used in reports and labels")
    qasm: str = Field(..., description="OpenQASM 2.0 text")
    layout: Optional[Dict[int, int]] = Field(default=None, description="Logical to physical qubit map")


class RecognizerOptions(BaseModel):
    """SWAP recognizer switches shared by the analysis endpoints."""
    aliases: List[str] = Field(default=[], description="Gate names treated as SWAP")
    strict_unitary: bool = Field(default=False, description="Verify pattern SWAPs by unitary multiplication")
    tolerance: Optional[float] = Field(default=None, gt=0, description="Matrix matching tolerance")
    include_swap_edges: bool = Field(default=False, description="Count SWAP pairs as edges")


class ExtractRequest(RecognizerOptions):
    circuits: List[CircuitPayload] = Field(..., min_length=1)


class ExtractedCircuit(BaseModel):
    source_name: str
    graph: CouplingGraph
    events: List[SwapEvent]
    diagnostics: List[Diagnostic]


class ExtractResponse(BaseModel):
    results: List[ExtractedCircuit]


class HammingRequest(BaseModel):
    first: CouplingGraph
    second: CouplingGraph


class HammingResponse(BaseModel):
    distance: int


class TraceRequest(RecognizerOptions):
    circuits: List[CircuitPayload] = Field(..., min_length=1)
    labels: Optional[Dict[str, str]] = Field(default=None, description="Ground-truth backend per source name")


class BackendSummary(BaseModel):
    name: str
    num_qubits: int
    num_edges: int


class BackendListResponse(BaseModel):
    total: int
    backends: List[BackendSummary]


class HealthResponse(BaseModel):
    """Response for health check endpoint."""
    service: str = Field(..., description="Service name")
    status: str = Field(..., description="Health status")
    message: str = Field(..., description="Health message")
