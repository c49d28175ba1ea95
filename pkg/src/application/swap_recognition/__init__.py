from src.application.swap_recognition.recognizer import (
    ScanResult,
    SwapRecognizer,
    compose_span_unitary,
    scan_swaps,
    scan_swaps_with_diagnostics,
    unitary_equals_swap,
)

__all__ = [
    "ScanResult",
    "SwapRecognizer",
    "compose_span_unitary",
    "scan_swaps",
    "scan_swaps_with_diagnostics",
    "unitary_equals_swap",
]
