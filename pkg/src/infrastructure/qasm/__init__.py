"""OpenQASM 2.0 frontend: parsing, inlining, layout sidecars and emission."""
from src.infrastructure.qasm.emitter import emit_qasm
from src.infrastructure.qasm.inliner import inline_definition
from src.infrastructure.qasm.layout import layout_to_json, parse_layout_sidecar
from src.infrastructure.qasm.parser import parse_qasm

__all__ = ["emit_qasm", "inline_definition", "layout_to_json", "parse_layout_sidecar", "parse_qasm"]
