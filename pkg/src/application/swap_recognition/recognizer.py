"""
SWAP recognition over an instruction stream.

Six manifestations are recognized: the `swap` gate itself, gates named as
SWAP aliases (or custom gates whose body is a SWAP), explicit matrices equal
to SWAP up to global phase, three alternating CNOTs, iSWAP followed by phase
corrections, and the RXX/RYY/RZZ(pi/2) triple.
"""
import logging
import math
from bisect import bisect_right
from collections import defaultdict
from heapq import merge
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from src.domain.circuit.gate_library import (
    IDENTITY_2,
    IDENTITY_4,
    SWAP_MATRIX,
    gate_matrix,
    is_standard_gate,
    max_unitarity_deviation,
)
from src.domain.circuit.models import UNITARITY_TOLERANCE, GateDefinition, Instruction, ParsedCircuit
from src.domain.swap.models import (
    KIND_PRIORITY,
    PATTERN_KINDS,
    Diagnostic,
    DiagnosticCode,
    RecognizerConfig,
    SwapEvent,
    SwapKind,
)
from src.infrastructure.qasm.inliner import inline_definition
from src.shared.exceptions import UnitaryError

logger = logging.getLogger(__name__)

_PHASE_GATES = frozenset({"s", "sdg"})
_PAULI_TRIPLE = frozenset({"rxx", "ryy", "rzz"})
_HALF_PI = math.pi / 2


def unitary_equals_swap(matrix: np.ndarray, tolerance: float = 1e-6) -> bool:
    """
    Check whether a 4x4 unitary equals SWAP up to a global phase.

    The phase is taken from the largest-magnitude entry of the matrix against
    the matching SWAP entry, then every entry is compared.

    Args:
        matrix: 4x4 complex matrix
        tolerance: Max absolute entry deviation allowed

    Returns:
        True if max|matrix - phase * SWAP| <= tolerance

    Raises:
        UnitaryError: If the matrix is not 4x4 or not unitary within 1e-9
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise UnitaryError(f"expected a 4x4 matrix, got shape {m.shape}")
    deviation = max_unitarity_deviation(m)
    if deviation > UNITARITY_TOLERANCE:
        raise UnitaryError(f"matrix is not unitary (deviation {deviation:.3e})")

    index = np.unravel_index(int(np.argmax(np.abs(m))), m.shape)
    reference = SWAP_MATRIX[index]
    if reference == 0:
        return False
    phase = m[index] / reference
    phase /= abs(phase)
    return float(np.max(np.abs(m - phase * SWAP_MATRIX))) <= tolerance


def _instruction_unitary(
    instruction: Instruction,
    pair: Tuple[int, int],
    definitions: Mapping[str, GateDefinition],
) -> np.ndarray:
    a, b = pair
    if any(q not in pair for q in instruction.qubits):
        raise UnitaryError(f"{instruction} acts outside the pair {pair}")

    if instruction.matrix is None and not is_standard_gate(instruction.name):
        definition = definitions.get(instruction.name)
        if definition is None:
            raise UnitaryError(f"unknown gate '{instruction.name}' without an explicit matrix")
        body = inline_definition(definition, instruction.params, instruction.qubits, definitions)
        return compose_span_unitary(body, pair, definitions)

    if instruction.matrix is not None:
        matrix = instruction.unitary()
    else:
        try:
            matrix = gate_matrix(instruction.name, instruction.params)
        except (KeyError, TypeError) as e:
            raise UnitaryError(f"no unitary for gate '{instruction.name}'") from e

    if len(instruction.qubits) == 1:
        if instruction.qubits[0] == a:
            return np.kron(matrix, IDENTITY_2)
        return np.kron(IDENTITY_2, matrix)
    if instruction.qubits == (a, b):
        return matrix
    return SWAP_MATRIX @ matrix @ SWAP_MATRIX


def compose_span_unitary(
    instructions: Sequence[Instruction],
    pair: Tuple[int, int],
    definitions: Optional[Mapping[str, GateDefinition]] = None,
) -> np.ndarray:
    """
    Multiply the unitaries of a run of instructions acting on one qubit pair.

    The first qubit of `pair` is the most significant bit. The leftmost
    instruction is applied first.

    Args:
        instructions: Instructions touching only qubits of the pair
        pair: The two qubits spanning the 4x4 space
        definitions: Custom gates that may appear in the run

    Returns:
        The 4x4 product; identity for an empty run

    Raises:
        UnitaryError: On a qubit outside the pair or a gate with no known unitary
    """
    if pair[0] == pair[1]:
        raise UnitaryError(f"pair {pair} must name two distinct qubits")
    definitions = definitions or {}
    unitary = IDENTITY_4.copy()
    for instruction in instructions:
        unitary = _instruction_unitary(instruction, pair, definitions) @ unitary
    return unitary


def _touching_index(instructions: Sequence[Instruction]) -> Dict[int, List[int]]:
    """Map each qubit to the ascending positions of instructions touching it."""
    touching: Dict[int, List[int]] = defaultdict(list)
    for position, instruction in enumerate(instructions):
        for qubit in set(instruction.qubits):
            touching[qubit].append(position)
    return touching


def _after(positions: List[int], i: int) -> Iterator[int]:
    for k in range(bisect_right(positions, i), len(positions)):
        yield positions[k]


def _pair_window(
    touching: Mapping[int, List[int]],
    consumed: Set[int],
    i: int,
    pair: Tuple[int, int],
    size: int = 3,
) -> Tuple[int, ...]:
    """Position i followed by the next unconsumed positions touching either qubit of the pair."""
    streams = [_after(touching[qubit], i) for qubit in pair]
    window = [i]
    for position in merge(*streams):
        if position == window[-1] or position in consumed:
            continue
        window.append(position)
        if len(window) == size:
            break
    return tuple(window)


class ScanResult(NamedTuple):
    events: List[SwapEvent]
    diagnostics: List[Diagnostic]


class SwapRecognizer:
    """
    Greedy left-to-right SWAP scanner.

    Multi-gate patterns are matched on the sub-stream of instructions that
    touch the candidate pair, so gates on unrelated qubits may sit between
    the parts of a SWAP. At each position every matching pattern is
    collected; the longest wins, ties broken by SwapKind order. Under
    strict_unitary a pattern that fails the unitary check is demoted to a
    diagnostic and the next candidate is tried.
    """

    def __init__(self, config: RecognizerConfig, definitions: Optional[Mapping[str, GateDefinition]] = None):
        self.config = config
        self.definitions = dict(definitions or {})
        self._custom_kinds: Dict[Tuple[str, Tuple[float, ...]], Optional[SwapKind]] = {}

    def scan(self, instructions: Sequence[Instruction]) -> ScanResult:
        events: List[SwapEvent] = []
        diagnostics: List[Diagnostic] = []
        touching = _touching_index(instructions)
        consumed: Set[int] = set()
        for i in range(len(instructions)):
            if i in consumed:
                continue
            accepted = None
            for kind, positions, pair in self._candidates(instructions, i, touching, consumed):
                if kind in PATTERN_KINDS and self.config.strict_unitary and not self._verify(instructions, positions, pair):
                    message = f"{kind.value} on {pair} at {i} is not SWAP up to global phase"
                    logger.warning(f"Demoted {message}")
                    diagnostics.append(Diagnostic(
                        code=DiagnosticCode.STRICT_UNITARY_DEMOTION, message=message, position=i,
                    ))
                    continue
                accepted = SwapEvent.over(pair, positions, kind)
                break
            if accepted is None:
                diagnostic = self._unresolved(instructions[i], i)
                if diagnostic is not None:
                    diagnostics.append(diagnostic)
                continue
            events.append(accepted)
            consumed.update(accepted.positions)
        return ScanResult(events, diagnostics)

    def _verify(self, instructions: Sequence[Instruction], positions: Sequence[int], pair: Tuple[int, int]) -> bool:
        unitary = compose_span_unitary([instructions[p] for p in positions], pair, self.definitions)
        return unitary_equals_swap(unitary, self.config.unitary_tolerance)

    def _candidates(
        self,
        instructions: Sequence[Instruction],
        i: int,
        touching: Mapping[int, List[int]],
        consumed: Set[int],
    ) -> List[Tuple[SwapKind, Tuple[int, ...], Tuple[int, int]]]:
        first = instructions[i]
        if len(first.qubits) != 2:
            return []
        found = []
        single = self._single_kind(first)
        if single is not None:
            found.append((single, (i,), first.qubits))
        name = first.name
        if name == "cx" or name == "iswap" or name in _PAULI_TRIPLE:
            positions = _pair_window(touching, consumed, i, first.qubits)
            window = [instructions[p] for p in positions]
            if name == "cx" and self._is_three_cnot(window):
                found.append((SwapKind.THREE_CNOT, positions, first.qubits))
            elif name == "iswap":
                iswap_span = self._iswap_phase_span(window)
                if iswap_span:
                    found.append((SwapKind.ISWAP_PHASE, positions[:iswap_span], first.qubits))
            elif name in _PAULI_TRIPLE and self._is_pauli_triple(window):
                found.append((SwapKind.PAULI_ROTATION_TRIPLE, positions, first.qubits))
        if len(found) > 1:
            found.sort(key=lambda c: (-len(c[1]), KIND_PRIORITY[c[0]]))
        return found

    def _single_kind(self, instruction: Instruction) -> Optional[SwapKind]:
        if instruction.name == "swap" and instruction.matrix is None:
            if "swap" in self.definitions:
                # A user gate named swap, declared without qelib1.inc
                return self._custom_kind(instruction)
            return SwapKind.DIRECT
        if instruction.name in self.config.aliases:
            return SwapKind.NAMED_ALIAS
        if instruction.matrix is not None:
            if unitary_equals_swap(instruction.unitary(), self.config.unitary_tolerance):
                return SwapKind.UNITARY_MATCH
            return None
        if not is_standard_gate(instruction.name) and instruction.name in self.definitions:
            return self._custom_kind(instruction)
        return None

    def _custom_kind(self, instruction: Instruction) -> Optional[SwapKind]:
        key = (instruction.name, instruction.params)
        if key not in self._custom_kinds:
            self._custom_kinds[key] = self._classify_custom(instruction)
        return self._custom_kinds[key]

    def _classify_custom(self, instruction: Instruction) -> Optional[SwapKind]:
        definition = self.definitions[instruction.name]
        body = inline_definition(definition, instruction.params, (0, 1), self.definitions)
        if not body:
            return None
        nested = SwapRecognizer(self.config, self.definitions).scan(body).events
        if len(nested) == 1 and nested[0].positions == tuple(range(len(body))) and nested[0].pair == (0, 1):
            return SwapKind.NAMED_ALIAS
        try:
            unitary = compose_span_unitary(body, (0, 1), self.definitions)
        except UnitaryError:
            return None
        if unitary_equals_swap(unitary, self.config.unitary_tolerance):
            return SwapKind.UNITARY_MATCH
        return None

    def _unresolved(self, instruction: Instruction, position: int) -> Optional[Diagnostic]:
        if (
            len(instruction.qubits) == 2
            and instruction.matrix is None
            and not is_standard_gate(instruction.name)
            and instruction.name not in self.definitions
            and instruction.name not in self.config.aliases
        ):
            return Diagnostic(
                code=DiagnosticCode.UNRESOLVED_CUSTOM_GATE,
                message=f"gate '{instruction.name}' has no definition; treated as a plain 2-qubit gate",
                position=position,
            )
        return None

    @staticmethod
    def _is_plain(instruction: Instruction, name: str) -> bool:
        return instruction.name == name and instruction.matrix is None and len(instruction.qubits) == 2

    def _is_three_cnot(self, window: Sequence[Instruction]) -> bool:
        if len(window) < 3 or not all(self._is_plain(ins, "cx") for ins in window):
            return False
        a, b = window[0].qubits
        return window[1].qubits == (b, a) and window[2].qubits == (a, b)

    def _is_pauli_triple(self, window: Sequence[Instruction]) -> bool:
        if len(window) < 3 or {ins.name for ins in window} != _PAULI_TRIPLE:
            return False
        pair = frozenset(window[0].qubits)
        tolerance = self.config.unitary_tolerance
        for ins in window:
            if ins.matrix is not None or len(ins.qubits) != 2 or frozenset(ins.qubits) != pair:
                return False
            if len(ins.params) != 1 or abs(ins.params[0] - _HALF_PI) > tolerance:
                return False
        return True

    def _is_phase_gate(self, instruction: Instruction, qubits: Sequence[int]) -> bool:
        if len(instruction.qubits) != 1 or instruction.qubits[0] not in qubits:
            return False
        if instruction.name in _PHASE_GATES:
            return True
        return (
            instruction.name == "rz"
            and len(instruction.params) == 1
            and abs(abs(instruction.params[0]) - _HALF_PI) <= self.config.unitary_tolerance
        )

    def _iswap_phase_span(self, window: Sequence[Instruction]) -> int:
        if len(window) < 2 or not self._is_plain(window[0], "iswap"):
            return 0
        pair = window[0].qubits
        if not self._is_phase_gate(window[1], pair):
            return 0
        if len(window) == 3:
            other = [q for q in pair if q != window[1].qubits[0]]
            if self._is_phase_gate(window[2], other):
                return 3
        return 2


def scan_swaps_with_diagnostics(circuit: ParsedCircuit, config: RecognizerConfig) -> ScanResult:
    """Scan a circuit, returning events together with diagnostics."""
    result = SwapRecognizer(config, circuit.definitions).scan(circuit.instructions)
    logger.debug(
        f"{circuit.source_name}: {len(result.events)} SWAP event(s), {len(result.diagnostics)} diagnostic(s)"
    )
    return result


def scan_swaps(circuit: ParsedCircuit, config: RecognizerConfig) -> List[SwapEvent]:
    """
    Find every SWAP in a circuit, in stream order with non-overlapping spans.

    Args:
        circuit: Parsed circuit; custom gates are inlined on demand
        config: Aliases, tolerance and strict-unitary switch

    Returns:
        Detected SWAP events
    """
    return scan_swaps_with_diagnostics(circuit, config).events
