"""
qtrace command line.

Reports go to stdout, logs and errors to stderr. Exit codes: 0 success,
1 forensic anomaly, 2 input error.
"""
import asyncio
import functools
import logging
import os
import sys
from enum import Enum
from typing import List, Optional

import typer

from src.application.backend_assembly.assembler import coverage_curve_to_csv
from src.application.forensics_manager import ForensicsManager
from src.domain.backend.models import VerdictKind
from src.domain.swap.models import SwapKind
from src.domain.synthesis.models import LayoutMode, SynthConfig, TopologyKind, TopologySpec
from src.infrastructure.storage.file_storage import read_text, write_text
from src.infrastructure.storage.serializers import dumps, graph_from_json, graph_to_json, report_to_json
from src.interfaces.cli.formatters import assembly_table, extraction_table, trace_table
from src.shared.exceptions import ForensicAnomaly, ForensicsError, InputError
from src.shared.logging import setup_logging

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="qtrace",
    help="Coupling-map forensics for transpiled OpenQASM 2.0 circuits.",
    no_args_is_help=True,
    add_completion=False,
)


class OutputFormat(str, Enum):
    JSON = "json"
    TABLE = "table"


def _handle_errors(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ForensicsError as e:
            typer.echo(f"error: {e.message}", err=True)
            raise typer.Exit(code=e.exit_code)
    return wrapper


async def _manager(aliases: Optional[str], strict_unitary: bool, tolerance: Optional[float], include_swap_edges: bool) -> ForensicsManager:
    return await ForensicsManager.create(
        aliases_path=aliases,
        strict_unitary=strict_unitary,
        tolerance=tolerance,
        include_swap_edges=include_swap_edges,
    )


AliasesOption = typer.Option(None, "--aliases", help="File with one SWAP alias gate name per line")
StrictOption = typer.Option(False, "--strict-unitary", help="Verify pattern SWAPs by unitary multiplication")
ToleranceOption = typer.Option(None, "--tolerance", help="Matrix matching tolerance")
SwapEdgesOption = typer.Option(False, "--include-swap-edges", help="Count SWAP pairs as edges")
FormatOption = typer.Option(OutputFormat.JSON, "--format", help="Output format")


@app.callback()
def main(log_level: str = typer.Option("WARNING", "--log-level", help="Log level for stderr")) -> None:
    setup_logging(log_level, stream=sys.stderr)


@app.command()
@_handle_errors
def extract(
    files: List[str] = typer.Argument(..., help="OpenQASM files"),
    aliases: Optional[str] = AliasesOption,
    strict_unitary: bool = StrictOption,
    tolerance: Optional[float] = ToleranceOption,
    include_swap_edges: bool = SwapEdgesOption,
    out_dir: Optional[str] = typer.Option(None, "--out-dir", help="Write <stem>.topology.json files here"),
    output_format: OutputFormat = FormatOption,
) -> None:
    """Derive the coupling subgraph of each circuit."""
    async def run():
        manager = await _manager(aliases, strict_unitary, tolerance, include_swap_edges)
        return await manager.extract_files(files, out_dir)

    results = asyncio.run(run())
    if output_format == OutputFormat.TABLE:
        typer.echo(extraction_table(results))
    else:
        for item in results:
            typer.echo(graph_to_json(item.graph))


@app.command()
@_handle_errors
def assemble(
    files: List[str] = typer.Argument(..., help="OpenQASM files forming one pool"),
    truth: Optional[str] = typer.Option(None, "--truth", help="Backend graph JSON for coverage"),
    shuffle: Optional[int] = typer.Option(None, "--shuffle", help="Seed for permuting the pool"),
    pools: int = typer.Option(1, "--pools", min=1, help="Orderings to average with --shuffle and --truth"),
    curve_csv: Optional[str] = typer.Option(None, "--curve-csv", help="Write the coverage curve as CSV"),
    aliases: Optional[str] = AliasesOption,
    strict_unitary: bool = StrictOption,
    tolerance: Optional[float] = ToleranceOption,
    include_swap_edges: bool = SwapEdgesOption,
    output_format: OutputFormat = FormatOption,
) -> None:
    """Union the derived graphs of a pool and report coverage."""
    async def run():
        manager = await _manager(aliases, strict_unitary, tolerance, include_swap_edges)
        report = await manager.assemble_files(files, truth, shuffle, pools)
        if curve_csv:
            await write_text(curve_csv, coverage_curve_to_csv(report.coverage_curve))
        return report

    report = asyncio.run(run())
    typer.echo(assembly_table(report) if output_format == OutputFormat.TABLE else report_to_json(report))


@app.command()
@_handle_errors
def trace(
    files: List[str] = typer.Argument(..., help="OpenQASM files"),
    registry: Optional[str] = typer.Option(None, "--registry", help="Registry JSON of candidate backends"),
    labels: Optional[str] = typer.Option(None, "--labels", help="Ground-truth labels JSON"),
    strict: bool = typer.Option(False, "--strict", help="Exit 1 when any circuit is unmatched"),
    aliases: Optional[str] = AliasesOption,
    strict_unitary: bool = StrictOption,
    tolerance: Optional[float] = ToleranceOption,
    include_swap_edges: bool = SwapEdgesOption,
    output_format: OutputFormat = FormatOption,
) -> None:
    """Trace circuits to the registry backends containing their subgraphs."""
    async def run():
        manager = await _manager(aliases, strict_unitary, tolerance, include_swap_edges)
        return await manager.trace_files(files, registry, labels)

    report = asyncio.run(run())
    typer.echo(trace_table(report) if output_format == OutputFormat.TABLE else report_to_json(report))
    unmatched = [item.source_name for item in report.outcomes if item.outcome.verdict == VerdictKind.UNMATCHED]
    if strict and unmatched:
        raise ForensicAnomaly(f"{len(unmatched)} circuit(s) match no backend: {', '.join(unmatched)}")


@app.command()
@_handle_errors
def hamming(
    first: str = typer.Argument(..., help="Coupling graph JSON"),
    second: str = typer.Argument(..., help="Coupling graph JSON"),
) -> None:
    """Print the number of edges present in exactly one of two graphs."""
    distance = asyncio.run(ForensicsManager().hamming_files(first, second))
    typer.echo(str(distance))


def _parse_edge(text: str):
    try:
        a, b = (int(part) for part in text.split(","))
    except ValueError as e:
        raise InputError(f"edge '{text}' must look like A,B") from e
    return (a, b)


@app.command()
@_handle_errors
def synth(
    out_dir: str = typer.Option(..., "--out-dir", help="Directory for fixture files"),
    topology: TopologyKind = typer.Option(TopologyKind.LINEAR, "--topology", help="Topology family"),
    qubits: Optional[int] = typer.Option(None, "--qubits", help="Topology size"),
    graph: Optional[str] = typer.Option(None, "--graph", help="Graph JSON for an explicit topology"),
    logical: Optional[int] = typer.Option(None, "--logical", help="Logical qubits, defaults to all"),
    ops: int = typer.Option(0, "--ops", min=0, help="Random 2-qubit operations"),
    disguise: List[SwapKind] = typer.Option([SwapKind.DIRECT], "--disguise", help="SWAP disguises, round-robin"),
    layout: LayoutMode = typer.Option(LayoutMode.IDENTITY, "--layout", help="Initial placement"),
    seed: int = typer.Option(0, "--seed", help="Seed of the first fixture"),
    count: int = typer.Option(1, "--count", min=1, help="Fixtures with consecutive seeds"),
    enumerate_edges: bool = typer.Option(False, "--enumerate-edges", help="Emit one cx per edge first"),
    swap_only: List[str] = typer.Option([], "--swap-only", help="Edge A,B exercised only by a SWAP"),
    user_boundary: Optional[int] = typer.Option(None, "--user-boundary", help="First logical qubit of an appended user program"),
    prefix: Optional[str] = typer.Option(None, "--prefix", help="File name prefix"),
) -> None:
    """Generate ground-truth fixtures: .qasm, .layout.json and .topology.json."""
    async def run():
        if topology == TopologyKind.EXPLICIT:
            if not graph:
                raise InputError("--graph is required for an explicit topology")
            spec = TopologySpec.explicit(graph_from_json(await read_text(graph)))
            default_name = os.path.splitext(os.path.basename(graph))[0]
        else:
            if qubits is None:
                raise InputError("--qubits is required for a topology family")
            spec = TopologySpec(kind=topology, size=qubits)
            default_name = None
        num_logical = logical or (qubits if qubits is not None else len(spec.graph.qubits()))
        config = SynthConfig(
            num_logical=num_logical,
            num_2q_ops=ops,
            layout_mode=layout,
            seed=seed,
            disguise=tuple(disguise),
            user_boundary=user_boundary,
            enumerate_edges=enumerate_edges,
            swap_only_edges=tuple(_parse_edge(e) for e in swap_only),
        )
        return await ForensicsManager().synthesize_files(spec, config, out_dir, count, prefix or default_name)

    try:
        written = asyncio.run(run())
    except ValueError as e:
        raise InputError(str(e)) from e
    typer.echo(dumps(written))
