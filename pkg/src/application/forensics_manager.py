"""
ForensicsManager: file-level orchestration shared by the CLI and HTTP surfaces.
"""
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from pydantic import ValidationError as PydanticValidationError

from src.application.backend_assembly.assembler import assemble, average_coverage_curve, shuffle_pool
from src.application.backend_tracing.registry import BackendRegistry
from src.application.backend_tracing.tracer import trace_pool
from src.application.coupling_extraction.extractor import derive_coupling_map, hamming_distance
from src.application.synth_oracle.synthesizer import TOPOLOGY_SUFFIX, synthesize, write_fixture
from src.domain.backend.models import AssemblyReport, CircuitGraph, PoolTraceReport
from src.domain.circuit.models import ParsedCircuit
from src.domain.swap.models import RecognizerConfig
from src.domain.synthesis.models import SynthConfig, TopologySpec
from src.infrastructure.qasm.layout import parse_layout_sidecar, sidecar_path
from src.infrastructure.qasm.parser import parse_qasm
from src.infrastructure.storage.file_storage import read_many, read_optional_text, read_text, write_text
from src.infrastructure.storage.serializers import aliases_from_text, graph_from_json, graph_to_json, labels_from_json
from src.shared.config import settings
from src.shared.exceptions import InputError, LayoutError

logger = logging.getLogger(__name__)


class ForensicsManager:
    """
    Coordinates parsing, extraction, assembly, tracing and synthesis over files.

    Files are read concurrently; every result keeps the order of the input
    paths.
    """

    def __init__(
        self,
        config: Optional[RecognizerConfig] = None,
        include_swap_edges: bool = False,
        registry: Optional[BackendRegistry] = None,
    ):
        """
        Initialize the manager.

        Args:
            config: SWAP recognizer settings, defaults from settings
            include_swap_edges: Add SWAP pairs as edges during extraction
            registry: Preloaded backend registry for tracing
        """
        self.config = config or RecognizerConfig(
            aliases=settings.SWAP_ALIASES, unitary_tolerance=settings.UNITARY_TOLERANCE,
        )
        self.include_swap_edges = include_swap_edges
        self.registry = registry

    @classmethod
    async def create(
        cls,
        aliases_path: Optional[str] = None,
        strict_unitary: bool = False,
        tolerance: Optional[float] = None,
        include_swap_edges: bool = False,
    ) -> "ForensicsManager":
        """Build a manager from command-line style options."""
        aliases = set(settings.SWAP_ALIASES)
        if aliases_path:
            aliases |= aliases_from_text(await read_text(aliases_path))
        try:
            config = RecognizerConfig(
                aliases=aliases,
                unitary_tolerance=tolerance if tolerance is not None else settings.UNITARY_TOLERANCE,
                strict_unitary=strict_unitary,
            )
        except PydanticValidationError as e:
            error = e.errors()[0]
            field = ".".join(str(part) for part in error["loc"])
            raise InputError(f"invalid recognizer setting {field}: {error['msg']}") from e
        return cls(config=config, include_swap_edges=include_swap_edges)

    async def load_circuits(self, paths: Sequence[str], attach_layouts: bool = True) -> List[ParsedCircuit]:
        """
        Parse circuit files, attaching `<stem>.layout.json` sidecars when present.

        Args:
            paths: OpenQASM files
            attach_layouts: Look for layout sidecars next to each file

        Returns:
            Parsed circuits named after their file basenames
        """
        texts = await read_many(paths)
        circuits = []
        for path, text in zip(paths, texts):
            circuit = parse_qasm(text, source_name=os.path.basename(path))
            if attach_layouts:
                layout_text = await read_optional_text(sidecar_path(path))
                if layout_text is not None:
                    try:
                        circuit = circuit.with_layout(parse_layout_sidecar(layout_text))
                    except LayoutError as e:
                        raise LayoutError(f"{sidecar_path(path)}: {e.message}") from e
            circuits.append(circuit)
        logger.info(f"Loaded {len(circuits)} circuit(s)")
        return circuits

    def extract(self, circuits: Iterable[ParsedCircuit]) -> List[CircuitGraph]:
        return [
            CircuitGraph(
                source_name=c.source_name,
                graph=derive_coupling_map(c, self.config, self.include_swap_edges),
            )
            for c in circuits
        ]

    async def extract_files(self, paths: Sequence[str], out_dir: Optional[str] = None) -> List[CircuitGraph]:
        """
        Derive one coupling graph per circuit file.

        Args:
            paths: OpenQASM files
            out_dir: When given, write `<stem>.topology.json` per circuit there

        Returns:
            Derived graphs in input order
        """
        results = self.extract(await self.load_circuits(paths))
        if out_dir:
            for item in results:
                stem = Path(item.source_name).stem
                await write_text(os.path.join(out_dir, f"{stem}{TOPOLOGY_SUFFIX}"), graph_to_json(item.graph))
        return results

    async def assemble_files(
        self,
        paths: Sequence[str],
        truth_path: Optional[str] = None,
        shuffle_seed: Optional[int] = None,
        pools: int = 1,
    ) -> AssemblyReport:
        """
        Union the graphs derived from a pool of circuit files.

        Args:
            paths: OpenQASM files
            truth_path: Backend graph JSON to measure coverage against
            shuffle_seed: Permute the pool with this seed before assembling
            pools: With a seed and truth, average the curve over this many orderings

        Returns:
            AssemblyReport; the curve is averaged when pools > 1
        """
        pool = self.extract(await self.load_circuits(paths))
        truth = graph_from_json(await read_text(truth_path)) if truth_path else None
        if shuffle_seed is not None:
            pool = shuffle_pool(pool, shuffle_seed)
        report = assemble([p.graph for p in pool], truth, [p.source_name for p in pool])
        if truth is not None and shuffle_seed is not None and pools > 1:
            report.coverage_curve = average_coverage_curve([p.graph for p in pool], truth, pools, shuffle_seed)
        return report

    async def load_registry(self, registry_path: Optional[str] = None) -> BackendRegistry:
        if registry_path is None and self.registry is not None:
            return self.registry
        return await BackendRegistry.load(registry_path or settings.DEFAULT_REGISTRY_PATH)

    async def trace_files(
        self,
        paths: Sequence[str],
        registry_path: Optional[str] = None,
        labels_path: Optional[str] = None,
    ) -> PoolTraceReport:
        """
        Trace circuit files against a backend registry.

        Args:
            paths: OpenQASM files
            registry_path: Registry JSON, defaults to DEFAULT_REGISTRY_PATH
            labels_path: Ground-truth labels JSON {source_name: backend}

        Returns:
            PoolTraceReport in input order
        """
        registry = await self.load_registry(registry_path)
        circuits = await self.load_circuits(paths)
        labels: Optional[Dict[str, str]] = None
        if labels_path:
            labels = labels_from_json(await read_text(labels_path))
        return trace_pool(
            circuits, registry, self.config, labels, self.include_swap_edges, settings.MAX_WORKERS,
        )

    async def hamming_files(self, first_path: str, second_path: str) -> int:
        """Hamming distance between two coupling graph JSON files."""
        first, second = await read_many([first_path, second_path])
        return hamming_distance(graph_from_json(first), graph_from_json(second))

    async def synthesize_files(
        self,
        topology: TopologySpec,
        config: SynthConfig,
        out_dir: str,
        count: int = 1,
        prefix: Optional[str] = None,
    ) -> List[str]:
        """
        Generate synthetic fixtures with consecutive seeds.

        Returns:
            Every path written
        """
        written: List[str] = []
        prefix = prefix or f"{topology.kind.value}{topology.size or ''}"
        for k in range(count):
            seed = config.seed + k
            name = f"{prefix}-s{seed}"
            result = synthesize(topology, config.model_copy(update={"seed": seed}), source_name=f"{name}.qasm")
            written.extend(await write_fixture(result, out_dir, name))
        logger.info(f"Wrote {count} fixture(s) to {out_dir}")
        return written
