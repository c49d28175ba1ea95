"""
Standard gate table and unitaries.

Two-qubit matrices use the operand order of the instruction: the first operand
is the most significant bit of the basis index.
"""
import math
from typing import Callable, Dict, NamedTuple, Sequence

import numpy as np


class GateSignature(NamedTuple):
    """Arity of a standard gate."""
    num_params: int
    num_qubits: int


STANDARD_GATES: Dict[str, GateSignature] = {
    "u1": GateSignature(1, 1),
    "u2": GateSignature(2, 1),
    "u3": GateSignature(3, 1),
    "u": GateSignature(3, 1),
    "p": GateSignature(1, 1),
    "id": GateSignature(0, 1),
    "x": GateSignature(0, 1),
    "y": GateSignature(0, 1),
    "z": GateSignature(0, 1),
    "h": GateSignature(0, 1),
    "s": GateSignature(0, 1),
    "sdg": GateSignature(0, 1),
    "t": GateSignature(0, 1),
    "tdg": GateSignature(0, 1),
    "sx": GateSignature(0, 1),
    "sxdg": GateSignature(0, 1),
    "rx": GateSignature(1, 1),
    "ry": GateSignature(1, 1),
    "rz": GateSignature(1, 1),
    "cx": GateSignature(0, 2),
    "cz": GateSignature(0, 2),
    "swap": GateSignature(0, 2),
    "iswap": GateSignature(0, 2),
    "rxx": GateSignature(1, 2),
    "ryy": GateSignature(1, 2),
    "rzz": GateSignature(1, 2),
    "ccx": GateSignature(0, 3),
}

# Builtins available without the standard include
BUILTIN_GATES: Dict[str, str] = {"U": "u3", "CX": "cx"}

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

SWAP_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
ISWAP_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
)
CX_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def _phase(lam: float) -> np.ndarray:
    return np.diag([1, np.exp(1j * lam)]).astype(complex)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def _pauli_rotation(pauli: np.ndarray) -> Callable[[float], np.ndarray]:
    generator = np.kron(pauli, pauli)

    def rotation(theta: float) -> np.ndarray:
        return math.cos(theta / 2) * IDENTITY_4 - 1j * math.sin(theta / 2) * generator

    return rotation


_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)

_MATRIX_FACTORIES: Dict[str, Callable[..., np.ndarray]] = {
    "u1": _phase,
    "p": _phase,
    "u2": lambda phi, lam: _u3(math.pi / 2, phi, lam),
    "u3": _u3,
    "u": _u3,
    "id": lambda: IDENTITY_2,
    "x": lambda: PAULI_X,
    "y": lambda: PAULI_Y,
    "z": lambda: PAULI_Z,
    "h": lambda: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "s": lambda: _phase(math.pi / 2),
    "sdg": lambda: _phase(-math.pi / 2),
    "t": lambda: _phase(math.pi / 4),
    "tdg": lambda: _phase(-math.pi / 4),
    "sx": lambda: _SX,
    "sxdg": lambda: _SX.conj().T,
    "rx": _rx,
    "ry": _ry,
    "rz": _rz,
    "cx": lambda: CX_MATRIX,
    "cz": lambda: CZ_MATRIX,
    "swap": lambda: SWAP_MATRIX,
    "iswap": lambda: ISWAP_MATRIX,
    "rxx": _pauli_rotation(PAULI_X),
    "ryy": _pauli_rotation(PAULI_Y),
    "rzz": _pauli_rotation(PAULI_Z),
}


def is_standard_gate(name: str) -> bool:
    """Return True if the gate belongs to the standard table."""
    return name in STANDARD_GATES


def gate_matrix(name: str, params: Sequence[float] = ()) -> np.ndarray:
    """
    Return the unitary of a standard 1- or 2-qubit gate.

    Args:
        name: Lowercase gate name
        params: Real parameters, radians for rotations

    Returns:
        2x2 or 4x4 complex matrix in operand order

    Raises:
        KeyError: If the gate has no matrix in the table (ccx included)
    """
    return np.asarray(_MATRIX_FACTORIES[name](*params), dtype=complex)


def max_unitarity_deviation(matrix: np.ndarray) -> float:
    """Max absolute entry of M·M† − I."""
    m = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def is_unitary(matrix: np.ndarray, tolerance: float = 1e-9) -> bool:
    """Check unitarity within an absolute entry tolerance."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return max_unitarity_deviation(m) <= tolerance
