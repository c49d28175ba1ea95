"""
Tracing derived coupling graphs back to registry backends.

A backend is a candidate when its coupling map contains every derived edge
under exact physical labels.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence

from toolz import groupby

from src.application.coupling_extraction.extractor import derive_coupling_map
from src.domain.backend.models import BackendRecord, PoolTraceReport, TraceOutcome, TracedCircuit, VerdictKind
from src.domain.circuit.models import ParsedCircuit
from src.domain.coupling.models import CouplingGraph
from src.domain.swap.models import RecognizerConfig
from src.shared.config import settings
from src.shared.exceptions import LabelError, RegistryError

logger = logging.getLogger(__name__)


def _contains(record: BackendRecord, derived: CouplingGraph) -> bool:
    if derived.max_qubit() >= record.num_qubits:
        return False
    return derived.edges <= record.topology.edges


def trace(derived: CouplingGraph, registry: Iterable[BackendRecord]) -> TraceOutcome:
    """
    Classify a derived graph against a registry.

    Args:
        derived: Coupling graph extracted from one circuit
        registry: Candidate backends (a BackendRegistry or any record list)

    Returns:
        Unique, Ambiguous or Unmatched outcome; candidates sorted by name

    Raises:
        RegistryError: If the registry is empty
    """
    records = list(registry)
    if not records:
        raise RegistryError("cannot trace against an empty registry")
    candidates = sorted(r.name for r in records if _contains(r, derived))
    matched = max(len(derived.edges & r.topology.edges) for r in records)
    if not candidates:
        verdict = VerdictKind.UNMATCHED
    elif len(candidates) == 1:
        verdict = VerdictKind.UNIQUE
    else:
        verdict = VerdictKind.AMBIGUOUS
    return TraceOutcome(verdict=verdict, candidates=tuple(candidates), matched_edges=matched)


def _check_labels(labels: Dict[str, str], circuits: Sequence[ParsedCircuit], backend_names: Sequence[str]) -> None:
    sources = {c.source_name for c in circuits}
    unknown_sources = sorted(set(labels) - sources)
    if unknown_sources:
        raise LabelError(f"labels reference unknown circuit(s): {unknown_sources}")
    unknown_backends = sorted(set(labels.values()) - set(backend_names))
    if unknown_backends:
        raise LabelError(f"labels reference unknown backend(s): {unknown_backends}")


def _percent_correct(items: List[TracedCircuit], labels: Dict[str, str]) -> float:
    correct = sum(1 for item in items if item.outcome.backend == labels[item.source_name])
    return 100.0 * correct / len(items)


def trace_pool(
    circuits: Sequence[ParsedCircuit],
    registry: Iterable[BackendRecord],
    config: RecognizerConfig,
    truth_labels: Optional[Dict[str, str]] = None,
    include_swap_edges: bool = False,
    max_workers: Optional[int] = None,
) -> PoolTraceReport:
    """
    Extract and trace every circuit of a pool.

    Extraction runs on a thread pool; outcomes keep the input order.
    Accuracy counts a labelled circuit as correct only when its verdict is
    Unique and names the labelled backend.

    Args:
        circuits: Parsed circuits with distinct source names
        registry: Candidate backends
        config: SWAP recognizer settings
        truth_labels: Optional source name -> backend name map
        include_swap_edges: Forwarded to coupling map derivation
        max_workers: Thread count, defaults to MAX_WORKERS

    Returns:
        PoolTraceReport with per-circuit outcomes and accuracy fields

    Raises:
        RegistryError: If the registry is empty
        LabelError: If a label names an unknown circuit or backend
    """
    records = list(registry)
    if not records:
        raise RegistryError("cannot trace against an empty registry")
    if truth_labels is not None:
        _check_labels(truth_labels, circuits, [r.name for r in records])

    def _run(circuit: ParsedCircuit) -> TracedCircuit:
        derived = derive_coupling_map(circuit, config, include_swap_edges)
        return TracedCircuit(source_name=circuit.source_name, outcome=trace(derived, records), derived=derived)

    with ThreadPoolExecutor(max_workers=max_workers or settings.MAX_WORKERS) as executor:
        outcomes = list(executor.map(_run, circuits))

    report = PoolTraceReport(outcomes=outcomes)
    if truth_labels is not None:
        labelled = [item for item in outcomes if item.source_name in truth_labels]
        if labelled:
            report.accuracy_percent = _percent_correct(labelled, truth_labels)
            by_backend = groupby(lambda item: truth_labels[item.source_name], labelled)
            report.per_backend_accuracy = {
                name: _percent_correct(items, truth_labels) for name, items in sorted(by_backend.items())
            }
            logger.info(f"Traced {len(outcomes)} circuit(s): accuracy {report.accuracy_percent:.2f}%")
    logger.debug(f"Verdicts: {report.verdict_counts()}")
    return report
