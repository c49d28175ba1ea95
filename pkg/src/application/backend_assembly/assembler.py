"""
Whole-backend assembly from pools of derived coupling graphs.
"""
import csv
import io
import logging
import operator
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
from toolz import accumulate

from src.application.coupling_extraction.extractor import edge_coverage_percent
from src.domain.backend.models import AssemblyReport, CircuitGraph
from src.domain.coupling.models import CouplingGraph
from src.shared.exceptions import LayoutError, ValidationError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _universe(graphs: Iterable[CouplingGraph]) -> Optional[int]:
    sizes = [g.num_qubits for g in graphs if g.num_qubits is not None]
    return max(sizes) if sizes else None


def assemble(
    pool: Sequence[CouplingGraph],
    truth: Optional[CouplingGraph] = None,
    source_names: Optional[Sequence[str]] = None,
) -> AssemblyReport:
    """
    Union a pool of derived graphs, optionally tracking coverage of a truth graph.

    The coverage curve follows pool order: entry k is the coverage reached by
    the first k graphs.

    Args:
        pool: Derived graphs sharing one backend's labelling
        truth: Full backend graph to measure coverage against
        source_names: Names for the per-circuit entries, defaults to circuit-<k>

    Returns:
        AssemblyReport with the union, per-circuit graphs and coverage curve
    """
    if source_names is None:
        source_names = [f"circuit-{k}" for k in range(len(pool))]
    if len(source_names) != len(pool):
        raise ValidationError(f"{len(source_names)} names for a pool of {len(pool)} graphs")

    running = list(accumulate(operator.or_, (g.edges for g in pool)))
    assembled = CouplingGraph(edges=running[-1] if running else (), num_qubits=_universe(pool))
    curve: List[Tuple[int, float]] = []
    if truth is not None and running:
        curve = [
            (k, edge_coverage_percent(CouplingGraph(edges=edges), truth))
            for k, edges in enumerate(running, start=1)
        ]
        logger.info(f"Assembled {len(pool)} graph(s): {len(assembled)} edge(s), coverage {curve[-1][1]:.2f}%")

    return AssemblyReport(
        assembled=assembled,
        per_circuit=[CircuitGraph(source_name=n, graph=g) for n, g in zip(source_names, pool)],
        coverage_curve=curve,
    )


def project_user_subgraph(
    derived: CouplingGraph,
    layout: Dict[int, int],
    user_logical: Iterable[int],
) -> CouplingGraph:
    """
    Restrict a derived graph to the physical qubits of a user's logical qubits.

    Raises:
        LayoutError: If a user logical qubit has no physical assignment
    """
    user_logical = list(user_logical)
    missing = sorted(q for q in user_logical if q not in layout)
    if missing:
        raise LayoutError(f"logical qubit(s) {missing} missing from layout")
    return derived.induced(layout[q] for q in user_logical)


def shuffle_pool(pool: Sequence[T], seed: int) -> List[T]:
    """Return a seeded permutation of the pool."""
    shuffled = list(pool)
    random.Random(seed).shuffle(shuffled)
    return shuffled


def average_coverage_curve(
    pool: Sequence[CouplingGraph],
    truth: CouplingGraph,
    pools: int = 10,
    seed: int = 0,
) -> List[Tuple[int, float]]:
    """
    Coverage curve averaged over several random orderings of the pool.

    Args:
        pool: Derived graphs
        truth: Full backend graph
        pools: Number of random orderings
        seed: Seed of the first ordering; ordering p uses seed + p

    Returns:
        [(k, mean coverage after k graphs), ...]
    """
    if pools < 1:
        raise ValidationError("at least one ordering is required")
    if not pool:
        return []
    curves = [
        [pct for _, pct in assemble(shuffle_pool(pool, seed + p), truth).coverage_curve]
        for p in range(pools)
    ]
    mean = np.mean(np.asarray(curves), axis=0)
    return [(k, float(v)) for k, v in enumerate(mean, start=1)]


def coverage_curve_to_csv(curve: Sequence[Tuple[int, float]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["circuits_used", "coverage_percent"])
    for k, pct in curve:
        writer.writerow([k, repr(float(pct))])
    return buffer.getvalue()
