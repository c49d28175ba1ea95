"""
Synthetic transpiler used as a ground-truth oracle.

Logical qubits are placed on a topology and every random 2-qubit operation
is routed along a breadth-first shortest path, emitting SWAPs (in one of the
disguises the recognizer understands) before the final cx.
"""
import logging
import math
import os
import random
from itertools import cycle
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.application.synth_oracle.topologies import adjacency, build_topology, grow_region, shortest_path, topology_nodes
from src.domain.circuit.models import Instruction, ParsedCircuit
from src.domain.coupling.models import CouplingGraph
from src.domain.swap.models import SwapKind
from src.domain.synthesis.models import LayoutMode, SynthConfig, SynthesisResult, TopologySpec
from src.infrastructure.qasm.emitter import emit_qasm
from src.infrastructure.qasm.layout import layout_to_json, sidecar_path
from src.infrastructure.storage.file_storage import write_text
from src.infrastructure.storage.serializers import graph_to_json
from src.shared.exceptions import SynthesisError

logger = logging.getLogger(__name__)

_HALF_PI = math.pi / 2
TOPOLOGY_SUFFIX = ".topology.json"


def swap_instructions(kind: SwapKind, a: int, b: int) -> List[Instruction]:
    """Instructions implementing a routing SWAP on (a, b) in the given disguise."""
    if kind == SwapKind.DIRECT:
        return [Instruction(name="swap", qubits=(a, b))]
    if kind == SwapKind.THREE_CNOT:
        return [
            Instruction(name="cx", qubits=(a, b)),
            Instruction(name="cx", qubits=(b, a)),
            Instruction(name="cx", qubits=(a, b)),
        ]
    if kind == SwapKind.ISWAP_PHASE:
        return [
            Instruction(name="iswap", qubits=(a, b)),
            Instruction(name="s", qubits=(a,)),
            Instruction(name="s", qubits=(b,)),
        ]
    if kind == SwapKind.PAULI_ROTATION_TRIPLE:
        return [Instruction(name=name, qubits=(a, b), params=(_HALF_PI,)) for name in ("rxx", "ryy", "rzz")]
    raise SynthesisError(f"cannot emit a SWAP as {kind.value}")


class _Router:
    """Tracks logical positions and emits routed instructions."""

    def __init__(self, neighbours: Dict[int, List[int]], layout: Dict[int, int], disguises: Iterator[SwapKind]):
        self.neighbours = neighbours
        self.position = dict(layout)
        self.occupant = {p: l for l, p in layout.items()}
        self.disguises = disguises
        self.instructions: List[Instruction] = []

    def _recent_on(self, a: int, b: int, count: int) -> List[Instruction]:
        """The last `count` instructions touching a or b, oldest first."""
        found: List[Instruction] = []
        for instruction in reversed(self.instructions):
            if a in instruction.qubits or b in instruction.qubits:
                found.append(instruction)
                if len(found) == count:
                    break
        return found[::-1]

    def swap(self, a: int, b: int) -> None:
        kind = next(self.disguises)
        if kind == SwapKind.THREE_CNOT:
            # A preceding cx on the same pair must not complete a triple with the first two CNOTs
            recent = self._recent_on(a, b, 1)
            if recent and recent[0].name == "cx" and set(recent[0].qubits) == {a, b}:
                a, b = recent[0].qubits
        self.instructions.extend(swap_instructions(kind, a, b))
        la, lb = self.occupant.pop(a, None), self.occupant.pop(b, None)
        if la is not None:
            self.position[la] = b
            self.occupant[b] = la
        if lb is not None:
            self.position[lb] = a
            self.occupant[a] = lb

    def cx(self, a: int, b: int) -> None:
        recent = self._recent_on(a, b, 2)
        if (
            len(recent) == 2
            and all(r.name == "cx" for r in recent)
            and recent[0].qubits == (a, b)
            and recent[1].qubits == (b, a)
        ):
            # Would read as three alternating CNOTs on the pair
            a, b = b, a
        self.instructions.append(Instruction(name="cx", qubits=(a, b)))

    def route(self, control: int, target: int, region: Optional[Set[int]] = None) -> None:
        path = shortest_path(self.neighbours, self.position[control], self.position[target], region)
        for step in path[1:-1]:
            self.swap(self.position[control], step)
        self.cx(self.position[control], self.position[target])

    def random_ops(self, rng: random.Random, logicals: Sequence[int], count: int, region: Optional[Set[int]] = None) -> None:
        if count and len(logicals) < 2:
            raise SynthesisError("random 2-qubit operations need at least 2 logical qubits")
        for _ in range(count):
            control, target = rng.sample(list(logicals), 2)
            self.route(control, target, region)


def _place(logicals: Sequence[int], region: Sequence[int], mode: LayoutMode, rng: random.Random) -> Dict[int, int]:
    if mode == LayoutMode.IDENTITY:
        physical = sorted(region)[:len(logicals)]
    else:
        physical = rng.sample(sorted(region), len(logicals))
    return dict(zip(logicals, physical))


def _prepare(topology: TopologySpec, config: SynthConfig) -> Tuple[CouplingGraph, List[int]]:
    graph = build_topology(topology)
    nodes = topology_nodes(graph)
    if config.num_logical > len(nodes):
        raise SynthesisError(f"{config.num_logical} logical qubits exceed {len(nodes)} physical qubits")
    return graph, nodes


def _build_circuit(graph: CouplingGraph, nodes: List[int], instructions: List[Instruction], name: str) -> ParsedCircuit:
    universe = graph.num_qubits if graph.num_qubits is not None else max(nodes) + 1
    return ParsedCircuit(instructions=tuple(instructions), num_qubits=universe, source_name=name)


def synthesize(topology: TopologySpec, config: SynthConfig, source_name: Optional[str] = None) -> SynthesisResult:
    """
    Generate a routed circuit on a topology.

    With `enumerate_edges`, one cx per topology edge is emitted first (edges in
    `swap_only_edges` excepted), so every edge is exercised by a direct gate.
    Swap-only edges then get one routing SWAP each and never a direct gate.
    When `user_boundary` is set the call is delegated to synthesize_multi_tenant.

    Args:
        topology: Topology family and size, or an explicit graph
        config: Scenario settings
        source_name: Name recorded on the circuit

    Returns:
        The circuit, its ground-truth topology and the initial layout

    Raises:
        SynthesisError: On a disconnected topology, too many logical qubits or
            swap-only edges outside the topology
    """
    if config.user_boundary is not None:
        return synthesize_multi_tenant(topology, config, source_name)

    graph, nodes = _prepare(topology, config)
    rng = random.Random(config.seed)
    layout = _place(list(range(config.num_logical)), nodes, config.layout_mode, rng)
    router = _Router(adjacency(graph), layout, cycle(config.disguise))

    swap_only = set(config.swap_only_edges)
    outside = sorted(swap_only - graph.edges)
    if outside:
        raise SynthesisError(f"swap-only edge(s) {outside} are not topology edges")
    if config.enumerate_edges:
        for a, b in graph.sorted_edges():
            if (a, b) not in swap_only:
                router.cx(a, b)
    for a, b in config.swap_only_edges:
        router.swap(a, b)
    for control, target in config.operations:
        router.route(control, target)
    router.random_ops(rng, list(range(config.num_logical)), config.num_2q_ops)

    name = source_name or f"{topology.kind.value}-{config.seed}"
    circuit = _build_circuit(graph, nodes, router.instructions, name)
    logger.debug(f"Synthesized {name}: {len(circuit.instructions)} instruction(s) on {len(nodes)} qubit(s)")
    return SynthesisResult(circuit=circuit, ground_truth=graph, layout=layout)


def _tenant_regions(graph: CouplingGraph, nodes: List[int], sizes: Tuple[int, int], starts: List[int]) -> Tuple[List[int], List[int]]:
    neighbours = adjacency(graph)
    dummy_size, user_size = sizes
    for start in starts:
        dummy = grow_region(neighbours, [start], dummy_size)
        if len(dummy) < dummy_size:
            continue
        rest = nx.Graph()
        rest.add_nodes_from(q for q in nodes if q not in dummy)
        rest.add_edges_from(e for e in graph.edges if e[0] not in dummy and e[1] not in dummy)
        for component in sorted(nx.connected_components(rest), key=min):
            if len(component) >= user_size:
                user = grow_region(neighbours, [min(component)], user_size, allowed=set(component))
                return dummy, user
    raise SynthesisError(f"no disjoint connected regions of {dummy_size} and {user_size} qubits")


def synthesize_multi_tenant(topology: TopologySpec, config: SynthConfig, source_name: Optional[str] = None) -> SynthesisResult:
    """
    Generate a dummy program followed by an appended user program.

    Logical qubits below `user_boundary` belong to the dummy program, the rest
    to the user. Each tenant sits on its own connected region of exactly its
    size and is routed inside it, so the user segment only touches user qubits.

    Returns:
        SynthesisResult with `user_start` (first user instruction) and
        `user_logical` set
    """
    if config.user_boundary is None:
        raise SynthesisError("multi-tenant synthesis needs a user_boundary")
    if config.swap_only_edges or config.operations:
        raise SynthesisError("swap-only edges and explicit operations are not supported with multiple tenants")
    graph, nodes = _prepare(topology, config)
    rng = random.Random(config.seed)

    dummy_logical = list(range(config.user_boundary))
    user_logical = list(range(config.user_boundary, config.num_logical))
    starts = list(nodes)
    if config.layout_mode == LayoutMode.RANDOM:
        rng.shuffle(starts)
    dummy_region, user_region = _tenant_regions(graph, nodes, (len(dummy_logical), len(user_logical)), starts)

    layout = _place(dummy_logical, dummy_region, config.layout_mode, rng)
    layout.update(_place(user_logical, user_region, config.layout_mode, rng))
    router = _Router(adjacency(graph), layout, cycle(config.disguise))

    user_start = 0
    for logicals, region in ((dummy_logical, dummy_region), (user_logical, user_region)):
        if logicals is user_logical:
            user_start = len(router.instructions)
        if config.enumerate_edges:
            for a, b in graph.induced(region).sorted_edges():
                router.cx(a, b)
        if len(logicals) >= 2:
            router.random_ops(rng, logicals, config.num_2q_ops, set(region))

    name = source_name or f"{topology.kind.value}-tenants-{config.seed}"
    circuit = _build_circuit(graph, nodes, router.instructions, name)
    logger.debug(f"Synthesized {name}: user program starts at instruction {user_start}")
    return SynthesisResult(
        circuit=circuit,
        ground_truth=graph,
        layout=layout,
        user_start=user_start,
        user_logical=user_logical,
    )


async def write_fixture(result: SynthesisResult, out_dir: str, name: str) -> List[str]:
    """
    Write a synthetic circuit as `<name>.qasm` with its layout and topology sidecars.

    Returns:
        Paths written, circuit first
    """
    qasm_path = os.path.join(out_dir, f"{name}.qasm")
    return [
        await write_text(qasm_path, emit_qasm(result.circuit)),
        await write_text(sidecar_path(qasm_path), layout_to_json(result.layout)),
        await write_text(os.path.join(out_dir, f"{name}{TOPOLOGY_SUFFIX}"), graph_to_json(result.ground_truth)),
    ]
