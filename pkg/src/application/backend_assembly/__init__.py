from src.application.backend_assembly.assembler import (
    assemble,
    average_coverage_curve,
    coverage_curve_to_csv,
    project_user_subgraph,
    shuffle_pool,
)

__all__ = [
    "assemble",
    "average_coverage_curve",
    "coverage_curve_to_csv",
    "project_user_subgraph",
    "shuffle_pool",
]
