"""
Coupling map derivation from a transpiled circuit.

Walks the instruction stream once. A detected SWAP marks its pair in the
swap history and is skipped; any other 2-qubit instruction contributes its
pair as an edge unless that pair has already been swapped.
"""
import logging
from typing import List, NamedTuple

from src.application.swap_recognition.recognizer import scan_swaps_with_diagnostics
from src.domain.circuit.models import ParsedCircuit
from src.domain.coupling.models import CouplingGraph, SwapHistory, canonical_edge
from src.domain.swap.models import Diagnostic, DiagnosticCode, RecognizerConfig, SwapEvent
from src.shared.exceptions import ValidationError

logger = logging.getLogger(__name__)


class ExtractionResult(NamedTuple):
    graph: CouplingGraph
    history: SwapHistory
    events: List[SwapEvent]
    diagnostics: List[Diagnostic]


def extract_with_history(
    circuit: ParsedCircuit,
    config: RecognizerConfig,
    include_swap_edges: bool = False,
) -> ExtractionResult:
    """
    Derive the coupling subgraph and keep the intermediate state.

    Args:
        circuit: Parsed circuit
        config: SWAP recognizer settings
        include_swap_edges: Also add every SWAP pair as an edge

    Returns:
        The graph, the final swap history, the SWAP events and diagnostics
    """
    scan = scan_swaps_with_diagnostics(circuit, config)
    diagnostics = list(scan.diagnostics)
    event_at = {position: event for event in scan.events for position in event.positions}
    history = SwapHistory(circuit.num_qubits)
    edges = set()

    instructions = circuit.instructions
    for i, instruction in enumerate(instructions):
        event = event_at.get(i)
        if event is not None:
            if i == event.start:
                history.mark(*event.pair)
                if include_swap_edges:
                    edges.add(event.pair)
            continue

        qubits = instruction.qubits
        if len(qubits) == 2:
            if not history.is_marked(qubits[0], qubits[1]):
                edges.add(canonical_edge(qubits[0], qubits[1]))
        elif len(qubits) == 3:
            message = f"{instruction.name} on {qubits} contributes no edge"
            logger.warning(f"{circuit.source_name}: {message}")
            diagnostics.append(Diagnostic(code=DiagnosticCode.THREE_QUBIT_INSTRUCTION, message=message, position=i))

    graph = CouplingGraph(edges=edges, num_qubits=circuit.num_qubits)
    logger.debug(f"{circuit.source_name}: derived {len(graph)} edge(s) from {len(instructions)} instruction(s)")
    return ExtractionResult(graph, history, scan.events, diagnostics)


def derive_coupling_map(
    circuit: ParsedCircuit,
    config: RecognizerConfig,
    include_swap_edges: bool = False,
) -> CouplingGraph:
    """
    Derive the coupling subgraph a circuit was transpiled onto.

    A SWAP between a and b suppresses every later direct edge between them.

    Args:
        circuit: Parsed circuit
        config: SWAP recognizer settings
        include_swap_edges: Also add every SWAP pair as an edge

    Returns:
        The derived coupling graph over the circuit's qubit universe
    """
    return extract_with_history(circuit, config, include_swap_edges).graph


def hamming_distance(g1: CouplingGraph, g2: CouplingGraph) -> int:
    """Number of edges present in exactly one of the two graphs."""
    return len(g1.edges ^ g2.edges)


def edge_coverage_percent(derived: CouplingGraph, truth: CouplingGraph) -> float:
    """
    Percentage of truth edges recovered by a derived graph.

    Raises:
        ValidationError: If the truth graph has no edges
    """
    if not truth.edges:
        raise ValidationError("coverage needs a truth graph with at least one edge")
    return 100.0 * len(derived.edges & truth.edges) / len(truth.edges)
