"""
Constant folding of OpenQASM parameter expressions.

The accepted grammar is literals, `pi`, identifiers bound by a gate
definition, unary minus/plus, the binary operators + - * / and parentheses.
"""
import math
from functools import lru_cache
from typing import Mapping, Optional

from pyparsing import (
    Keyword,
    OpAssoc,
    ParseBaseException,
    ParserElement,
    Regex,
    Word,
    alphanums,
    alphas,
    infix_notation,
    one_of,
)

from src.domain.circuit.models import expression_symbols

ParserElement.enable_packrat()

__all__ = ["ExpressionError", "compile_expression", "evaluate_expression", "expression_symbols"]


class ExpressionError(ValueError):
    """Raised for expressions outside the supported arithmetic subset."""
    pass


class _Const:
    def __init__(self, value: float):
        self.value = value

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        return self.value


class _Symbol:
    def __init__(self, name: str):
        self.name = name

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        if self.name not in bindings:
            raise ExpressionError(f"unbound symbol '{self.name}'")
        return float(bindings[self.name])


class _Unary:
    def __init__(self, op: str, operand):
        self.op = op
        self.operand = operand

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        value = self.operand.evaluate(bindings)
        return -value if self.op == "-" else value


class _Binary:
    def __init__(self, tokens):
        self.first = tokens[0]
        self.rest = [(tokens[i], tokens[i + 1]) for i in range(1, len(tokens), 2)]

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        value = self.first.evaluate(bindings)
        for op, operand in self.rest:
            rhs = operand.evaluate(bindings)
            if op == "+":
                value += rhs
            elif op == "-":
                value -= rhs
            elif op == "*":
                value *= rhs
            else:
                if rhs == 0:
                    raise ExpressionError("division by zero")
                value /= rhs
        return value


def _build_grammar() -> ParserElement:
    number = Regex(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?").set_parse_action(lambda t: _Const(float(t[0])))
    pi = Keyword("pi").set_parse_action(lambda: _Const(math.pi))
    symbol = Word(alphas + "_", alphanums + "_").set_parse_action(lambda t: _Symbol(t[0]))
    operand = number | pi | symbol
    return infix_notation(
        operand,
        [
            (one_of("+ -"), 1, OpAssoc.RIGHT, lambda t: _Unary(t[0][0], t[0][1])),
            (one_of("* /"), 2, OpAssoc.LEFT, lambda t: _Binary(t[0])),
            (one_of("+ -"), 2, OpAssoc.LEFT, lambda t: _Binary(t[0])),
        ],
    )


_EXPRESSION = _build_grammar()


@lru_cache(maxsize=4096)
def compile_expression(text: str):
    """Parse an expression once; the result is reusable across bindings."""
    try:
        return _EXPRESSION.parse_string(text.strip(), parse_all=True)[0]
    except ParseBaseException as e:
        raise ExpressionError(f"unsupported parameter expression '{text.strip()}'") from e


def evaluate_expression(text: str, bindings: Optional[Mapping[str, float]] = None) -> float:
    """
    Fold a parameter expression to a real number.

    Args:
        text: Expression source, e.g. "-pi/2" or "theta*2"
        bindings: Values of formal parameter symbols

    Returns:
        The folded value

    Raises:
        ExpressionError: If the expression is unsupported or a symbol is unbound
    """
    value = compile_expression(text).evaluate(bindings or {})
    if not math.isfinite(value):
        raise ExpressionError(f"expression '{text.strip()}' is not finite")
    return value
