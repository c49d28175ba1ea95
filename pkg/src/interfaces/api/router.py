"""
HTTP router exposing extraction, Hamming distance and tracing.
"""
import logging
from typing import List

from fastapi import APIRouter, Depends
from pydantic import ValidationError as PydanticValidationError

from src.application.backend_tracing.registry import BackendRegistry
from src.application.backend_tracing.tracer import trace_pool
from src.application.coupling_extraction.extractor import extract_with_history, hamming_distance
from src.domain.backend.models import PoolTraceReport
from src.domain.circuit.models import ParsedCircuit
from src.domain.swap.models import RecognizerConfig
from src.infrastructure.qasm.parser import parse_qasm
from src.interfaces.api.models import (
    BackendListResponse,
    BackendSummary,
    CircuitPayload,
    ExtractedCircuit,
    ExtractRequest,
    ExtractResponse,
    HammingRequest,
    HammingResponse,
    RecognizerOptions,
    TraceRequest,
)
from src.shared.config import settings
from src.shared.exceptions import LayoutError

logger = logging.getLogger(__name__)

router = APIRouter(tags=["forensics"])


async def get_registry() -> BackendRegistry:
    """Get the backend registry, loading the default one on first use."""
    from src import main
    if main.backend_registry is None:
        main.backend_registry = await BackendRegistry.load(settings.DEFAULT_REGISTRY_PATH)
    return main.backend_registry


def _recognizer_config(options: RecognizerOptions) -> RecognizerConfig:
    return RecognizerConfig(
        aliases=set(settings.SWAP_ALIASES) | set(options.aliases),
        unitary_tolerance=options.tolerance or settings.UNITARY_TOLERANCE,
        strict_unitary=options.strict_unitary,
    )


def _parse(payloads: List[CircuitPayload]) -> List[ParsedCircuit]:
    circuits = []
    for payload in payloads:
        circuit = parse_qasm(payload.qasm, source_name=payload.name)
        if payload.layout is not None:
            try:
                circuit = circuit.with_layout(payload.layout)
            except PydanticValidationError as e:
                raise LayoutError(f"{payload.name}: layout is not injective") from e
        circuits.append(circuit)
    return circuits


@router.post("/extract", response_model=ExtractResponse)
async def extract(request: ExtractRequest) -> ExtractResponse:
    """Derive the coupling subgraph of each submitted circuit."""
    config = _recognizer_config(request)
    results = []
    for circuit in _parse(request.circuits):
        result = extract_with_history(circuit, config, request.include_swap_edges)
        results.append(ExtractedCircuit(
            source_name=circuit.source_name,
            graph=result.graph,
            events=result.events,
            diagnostics=result.diagnostics,
        ))
    logger.info(f"Extracted {len(results)} circuit(s)")
    return ExtractResponse(results=results)


@router.post("/hamming", response_model=HammingResponse)
async def hamming(request: HammingRequest) -> HammingResponse:
    """Number of edges present in exactly one of two graphs."""
    return HammingResponse(distance=hamming_distance(request.first, request.second))


@router.post("/trace", response_model=PoolTraceReport)
async def trace(request: TraceRequest, registry: BackendRegistry = Depends(get_registry)) -> PoolTraceReport:
    """Trace submitted circuits against the loaded backend registry."""
    return trace_pool(
        _parse(request.circuits),
        registry,
        _recognizer_config(request),
        request.labels,
        request.include_swap_edges,
        settings.MAX_WORKERS,
    )


@router.get("/backends", response_model=BackendListResponse)
async def list_backends(registry: BackendRegistry = Depends(get_registry)) -> BackendListResponse:
    """List registry backends."""
    backends = [
        BackendSummary(name=r.name, num_qubits=r.num_qubits, num_edges=len(r.topology)) for r in registry
    ]
    return BackendListResponse(total=len(backends), backends=backends)
