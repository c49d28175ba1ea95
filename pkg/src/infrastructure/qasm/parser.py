"""
OpenQASM 2.0 parser.

The grammar is built with pyparsing; statement parse actions produce small
records that keep their source offset so semantic errors can report a line
and column. The semantic pass resolves registers to physical indices,
broadcasts whole-register arguments and folds parameter expressions.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError as PydanticValidationError
from pyparsing import (
    Forward,
    Group,
    Keyword,
    MatchFirst,
    OneOrMore,
    Opt,
    ParseBaseException,
    ParserElement,
    QuotedString,
    Regex,
    Suppress,
    Word,
    ZeroOrMore,
    alphanums,
    alphas,
    col,
    cpp_style_comment,
    delimited_list,
    lineno,
    nums,
    original_text_for,
)

from src.domain.circuit.gate_library import BUILTIN_GATES, STANDARD_GATES, GateSignature
from src.domain.circuit.models import (
    MAX_GATE_ARITY,
    GateDefinition,
    GateTemplate,
    Instruction,
    ParsedCircuit,
)
from src.infrastructure.qasm.expressions import ExpressionError, evaluate_expression
from src.shared.exceptions import QasmParseError

logger = logging.getLogger(__name__)

STANDARD_INCLUDE = "qelib1.inc"
_KEYWORDS = ("OPENQASM", "include", "qreg", "creg", "gate", "opaque", "barrier", "measure", "reset", "if")


class _Statement:
    """A parsed statement and the offset it started at."""

    def __init__(self, kind: str, loc: int, **fields):
        self.kind = kind
        self.loc = loc
        self.fields = fields

    def __getitem__(self, key):
        return self.fields[key]


def _action(kind: str, build):
    def parse_action(text, loc, tokens):
        return _Statement(kind, loc, **build(tokens))
    return parse_action


def _build_grammar() -> ParserElement:
    lpar, rpar, lbrack, rbrack, lbrace, rbrace, semi = map(Suppress, "()[]{};")
    arrow = Suppress("->")
    integer = Word(nums).set_parse_action(lambda t: int(t[0]))
    keyword = MatchFirst([Keyword(k) for k in _KEYWORDS])
    ident = (~keyword + Word(alphas + "_", alphanums + "_")).set_name("identifier")

    nested = Forward()
    nested <<= "(" + ZeroOrMore(Regex(r"[^()]+") | nested) + ")"
    param_text = original_text_for(OneOrMore(Regex(r"[^(),;{}]+") | nested))
    params = Group(Opt(lpar + Opt(delimited_list(param_text)) + rpar))

    qarg = Group(ident + Opt(lbrack + integer + rbrack))
    qargs = Group(delimited_list(qarg))

    header = (Keyword("OPENQASM") + Regex(r"\d+(\.\d+)?") + semi).set_parse_action(
        _action("header", lambda t: {"version": t[1]})
    )
    include = (Keyword("include") + QuotedString('"') + semi).set_parse_action(
        _action("include", lambda t: {"path": t[1]})
    )
    qreg = (Keyword("qreg") + ident + lbrack + integer + rbrack + semi).set_parse_action(
        _action("qreg", lambda t: {"name": t[1], "size": t[2]})
    )
    creg = (Keyword("creg") + ident + lbrack + integer + rbrack + semi).set_parse_action(
        _action("creg", lambda t: {"name": t[1], "size": t[2]})
    )
    barrier = (Keyword("barrier") + qargs + semi).set_parse_action(
        _action("barrier", lambda t: {"qargs": t[1]})
    )
    measure = (Keyword("measure") + qarg + arrow + qarg + semi).set_parse_action(
        _action("measure", lambda t: {"qargs": [t[1]], "carg": t[2]})
    )
    reset = (Keyword("reset") + qarg + semi).set_parse_action(
        _action("reset", lambda t: {"qargs": [t[1]]})
    )
    gate_call = (ident + params + qargs + semi).set_parse_action(
        _action("call", lambda t: {"name": t[0], "params": list(t[1]), "qargs": t[2]})
    )

    body_call = (ident + params + Group(delimited_list(ident)) + semi).set_parse_action(
        _action("body_call", lambda t: {"name": t[0], "params": list(t[1]), "qubits": list(t[2])})
    )
    body_barrier = Suppress(Keyword("barrier") + delimited_list(ident) + semi)
    formal_params = Group(Opt(lpar + Opt(delimited_list(ident)) + rpar))
    gate_def = (
        Keyword("gate") + ident + formal_params + Group(delimited_list(ident))
        + lbrace + Group(ZeroOrMore(body_barrier | body_call)) + rbrace
    ).set_parse_action(
        _action(
            "gate",
            lambda t: {"name": t[1], "params": list(t[2]), "qubits": list(t[3]), "body": list(t[4])},
        )
    )

    statement = include | qreg | creg | gate_def | barrier | measure | reset | gate_call
    program = header + ZeroOrMore(statement)
    program.ignore(cpp_style_comment)
    return program


_PROGRAM = _build_grammar()


class _CircuitBuilder:
    """Semantic pass over parsed statements."""

    def __init__(self, text: str, source_name: str):
        self.text = text
        self.source_name = source_name
        self.qregs: Dict[str, Tuple[int, int]] = {}
        self.cregs: Dict[str, int] = {}
        self.num_qubits = 0
        self.definitions: Dict[str, GateDefinition] = {}
        self.instructions: List[Instruction] = []
        self.has_standard_include = False

    def error(self, message: str, loc: int) -> QasmParseError:
        return QasmParseError(message, line=lineno(loc, self.text), column=col(loc, self.text))

    def build(self, statements: Sequence[_Statement]) -> ParsedCircuit:
        for statement in statements:
            handler = getattr(self, f"_on_{statement.kind}")
            handler(statement)
        try:
            return ParsedCircuit(
                instructions=tuple(self.instructions),
                num_qubits=self.num_qubits,
                source_name=self.source_name,
                definitions=self.effective_definitions(),
            )
        except PydanticValidationError as e:
            raise QasmParseError(f"{self.source_name}: {e.errors()[0]['msg']}") from e

    def effective_definitions(self) -> Dict[str, GateDefinition]:
        """Custom gates the circuit carries; a standard name shadowed under qelib1.inc keeps its built-in meaning."""
        if not self.has_standard_include:
            return dict(self.definitions)
        return {name: d for name, d in self.definitions.items() if name not in STANDARD_GATES}

    def _on_header(self, statement: _Statement) -> None:
        if not statement["version"].startswith("2"):
            raise self.error(f"unsupported OpenQASM version {statement['version']}", statement.loc)

    def _on_include(self, statement: _Statement) -> None:
        if statement["path"] != STANDARD_INCLUDE:
            raise self.error(f"unsupported include '{statement['path']}'", statement.loc)
        self.has_standard_include = True

    def _on_qreg(self, statement: _Statement) -> None:
        name, size = statement["name"], statement["size"]
        if name in self.qregs or name in self.cregs:
            raise self.error(f"register '{name}' already declared", statement.loc)
        if size <= 0:
            raise self.error(f"register '{name}' must have positive size", statement.loc)
        self.qregs[name] = (self.num_qubits, size)
        self.num_qubits += size

    def _on_creg(self, statement: _Statement) -> None:
        name = statement["name"]
        if name in self.qregs or name in self.cregs:
            raise self.error(f"register '{name}' already declared", statement.loc)
        self.cregs[name] = statement["size"]

    def _on_barrier(self, statement: _Statement) -> None:
        for qarg in statement["qargs"]:
            self._resolve_qarg(qarg, statement.loc)

    def _on_reset(self, statement: _Statement) -> None:
        self._on_barrier(statement)

    def _on_measure(self, statement: _Statement) -> None:
        self._on_barrier(statement)
        carg = statement["carg"]
        if carg[0] not in self.cregs:
            raise self.error(f"undeclared classical register '{carg[0]}'", statement.loc)

    def _signature(self, raw_name: str) -> Optional[Tuple[str, GateSignature]]:
        if raw_name in BUILTIN_GATES:
            name = BUILTIN_GATES[raw_name]
            return name, STANDARD_GATES[name]
        name = raw_name.lower()
        if self.has_standard_include and name in STANDARD_GATES:
            return name, STANDARD_GATES[name]
        if name in self.definitions:
            definition = self.definitions[name]
            return name, GateSignature(len(definition.formal_params), len(definition.formal_qubits))
        return None

    def _on_gate(self, statement: _Statement) -> None:
        name = statement["name"].lower()
        formal_params: List[str] = statement["params"]
        formal_qubits: List[str] = statement["qubits"]
        if name in self.definitions:
            raise self.error(f"gate '{name}' already defined", statement.loc)
        if len(set(formal_qubits)) != len(formal_qubits) or len(set(formal_params)) != len(formal_params):
            raise self.error(f"gate '{name}' repeats a formal argument", statement.loc)
        if len(formal_qubits) > MAX_GATE_ARITY:
            raise self.error(f"gate '{name}' acts on {len(formal_qubits)} qubits; at most {MAX_GATE_ARITY} supported", statement.loc)
        body = []
        for call in statement["body"]:
            resolved = self._signature(call["name"])
            if resolved is None:
                raise self.error(f"undeclared gate '{call['name']}'", call.loc)
            body_name, signature = resolved
            self._check_arity(body_name, signature, len(call["params"]), len(call["qubits"]), call.loc)
            if len(set(call["qubits"])) != len(call["qubits"]):
                raise self.error(f"duplicate qubit operand in '{body_name}'", call.loc)
            body.append(GateTemplate(
                name=body_name,
                qubits=tuple(call["qubits"]),
                params=tuple(p.strip() for p in call["params"]),
            ))
        try:
            definition = GateDefinition(
                name=name,
                formal_params=tuple(formal_params),
                formal_qubits=tuple(formal_qubits),
                body=tuple(body),
            )
        except PydanticValidationError as e:
            raise self.error(e.errors()[0]["msg"].replace("Value error, ", ""), statement.loc) from e
        if name in STANDARD_GATES and self.has_standard_include:
            logger.debug(f"{self.source_name}: gate '{name}' shadows a standard gate; standard semantics apply")
        self.definitions[name] = definition

    def _check_arity(self, name: str, signature: GateSignature, num_params: int, num_qubits: int, loc: int) -> None:
        if signature.num_qubits > MAX_GATE_ARITY:
            raise self.error(f"gate '{name}' acts on {signature.num_qubits} qubits; at most {MAX_GATE_ARITY} supported", loc)
        if num_params != signature.num_params:
            raise self.error(f"gate '{name}' expects {signature.num_params} parameter(s), got {num_params}", loc)
        if num_qubits != signature.num_qubits:
            raise self.error(f"gate '{name}' expects {signature.num_qubits} qubit(s), got {num_qubits}", loc)

    def _resolve_qarg(self, qarg, loc: int) -> List[int]:
        register = qarg[0]
        if register not in self.qregs:
            raise self.error(f"undeclared quantum register '{register}'", loc)
        offset, size = self.qregs[register]
        if len(qarg) == 1:
            return list(range(offset, offset + size))
        index = qarg[1]
        if index >= size:
            raise self.error(f"index {index} out of bounds for register '{register}' of size {size}", loc)
        return [offset + index]

    def _on_call(self, statement: _Statement) -> None:
        resolved = self._signature(statement["name"])
        if resolved is None:
            raise self.error(f"undeclared gate '{statement['name']}'", statement.loc)
        name, signature = resolved
        self._check_arity(name, signature, len(statement["params"]), len(statement["qargs"]), statement.loc)
        try:
            params = tuple(evaluate_expression(p) for p in statement["params"])
        except ExpressionError as e:
            raise self.error(str(e), statement.loc) from e

        operands = [self._resolve_qarg(qarg, statement.loc) for qarg in statement["qargs"]]
        widths = {len(op) for op in operands if len(op) > 1}
        if len(widths) > 1:
            raise self.error(f"register size mismatch in '{name}' arguments", statement.loc)
        repeat = widths.pop() if widths else 1
        for k in range(repeat):
            qubits = tuple(op[k] if len(op) > 1 else op[0] for op in operands)
            if len(set(qubits)) != len(qubits):
                raise self.error(f"duplicate qubit operand in '{name}'", statement.loc)
            self.instructions.append(Instruction(name=name, qubits=qubits, params=params))


def parse_qasm(text: str, source_name: str = "<memory>") -> ParsedCircuit:
    """
    Parse OpenQASM 2.0 text into a circuit over physical qubits.

    Registers are concatenated in declaration order. Measurement, reset and
    barrier statements are validated and then dropped.

    Args:
        text: OpenQASM source
        source_name: Name recorded on the circuit and used in log messages

    Returns:
        The parsed circuit with custom gate applications left un-inlined

    Raises:
        QasmParseError: On syntax errors or unsupported constructs
    """
    try:
        statements = _PROGRAM.parse_string(text, parse_all=True)
    except ParseBaseException as e:
        raise QasmParseError(e.msg, line=e.lineno, column=e.col) from e
    circuit = _CircuitBuilder(text, source_name).build(list(statements))
    logger.debug(f"Parsed {source_name}: {len(circuit.instructions)} instructions on {circuit.num_qubits} qubits")
    return circuit
