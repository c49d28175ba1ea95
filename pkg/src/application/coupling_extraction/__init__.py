from src.application.coupling_extraction.extractor import (
    ExtractionResult,
    derive_coupling_map,
    edge_coverage_percent,
    extract_with_history,
    hamming_distance,
)

__all__ = [
    "ExtractionResult",
    "derive_coupling_map",
    "edge_coverage_percent",
    "extract_with_history",
    "hamming_distance",
]
