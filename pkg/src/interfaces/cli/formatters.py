"""
Human-readable table output for the command line.
"""
from typing import List, Sequence

from src.domain.backend.models import AssemblyReport, CircuitGraph, PoolTraceReport


def _edges(pairs) -> str:
    return " ".join(f"{a}-{b}" for a, b in pairs) or "-"


def _table(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    widths = [max(len(str(cell)) for cell in column) for column in zip(header, *rows)]
    lines = ["  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip() for row in [header, *rows]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def extraction_table(results: Sequence[CircuitGraph]) -> str:
    rows = [(r.source_name, str(len(r.graph)), _edges(r.graph.sorted_edges())) for r in results]
    return _table(("source", "count", "edges"), rows)


def assembly_table(report: AssemblyReport) -> str:
    lines = [
        _table(
            ("source", "count", "edges"),
            [(c.source_name, str(len(c.graph)), _edges(c.graph.sorted_edges())) for c in report.per_circuit],
        ),
        "",
        f"assembled: {len(report.assembled)} edge(s): {_edges(report.assembled.sorted_edges())}",
    ]
    if report.coverage_curve:
        lines += ["", _table(("circuits", "coverage %"), [(str(k), f"{pct:.2f}") for k, pct in report.coverage_curve])]
    return "\n".join(lines)


def trace_table(report: PoolTraceReport) -> str:
    rows = [
        (
            item.source_name,
            item.outcome.verdict.value,
            ",".join(item.outcome.candidates) or "-",
            str(len(item.derived)),
            str(item.outcome.matched_edges),
        )
        for item in report.outcomes
    ]
    lines = [_table(("source", "verdict", "candidates", "edges", "matched"), rows), ""]
    counts = report.verdict_counts()
    lines.append(", ".join(f"{kind}: {count}" for kind, count in counts.items()))
    if report.accuracy_percent is not None:
        lines.append(f"accuracy: {report.accuracy_percent:.2f}%")
    for name, pct in (report.per_backend_accuracy or {}).items():
        lines.append(f"  {name}: {pct:.2f}%")
    return "\n".join(lines)
