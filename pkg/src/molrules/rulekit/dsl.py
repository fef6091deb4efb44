"""The rule expression DSL.

Grammar (closed; whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := [NUMBER '*'] factor
    factor := atom ['/' atom]
    atom   := 'desc(' NAME ')' | 'count(' PATTERN ')' | 'has(' PATTERN ')'
            | '(' expr ')'

PATTERN is SMARTS-lite text (balanced parentheses, no quoting). A ratio
whose denominator evaluates to zero yields 0 and a recorded warning.
``parse_rule`` and ``print_expr`` are inverse on the expression tree.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from ..descriptors import is_registered
from ..descriptors.registry import _REGISTRY
from ..errors import PatternParseError, RuleParseError
from ..molgraph import Molecule, Pattern, count_matches, has_match, parse_pattern

INTEGER = "integer"
REAL = "real"
BINARY = "binary"


class DivisionByZeroWarning(UserWarning):
    pass


@dataclass(frozen=True)
class DescRef:
    name: str


@dataclass(frozen=True)
class Count:
    pattern_text: str
    pattern: Pattern


@dataclass(frozen=True)
class Has:
    pattern_text: str
    pattern: Pattern


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[float, "Expr"], ...]


@dataclass(frozen=True)
class Ratio:
    numerator: "Expr"
    denominator: "Expr"


Expr = DescRef | Count | Has | Sum | Ratio

_NUMBER_RE = re.compile(r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise RuleParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def parse(self) -> Expr:
        expr = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing text")
        return expr

    def parse_expr(self) -> Expr:
        terms = [self.parse_term(1.0)]
        while self.peek() in ("+", "-"):
            sign = 1.0 if self.peek() == "+" else -1.0
            self.pos += 1
            terms.append(self.parse_term(sign))
        if len(terms) == 1 and terms[0][0] == 1.0:
            return terms[0][1]
        return Sum(terms=tuple(terms))

    def parse_term(self, sign: float) -> tuple[float, Expr]:
        self.skip_ws()
        match = _NUMBER_RE.match(self.text, self.pos)
        coefficient = 1.0
        if match and self.text[self.pos] not in "dch(":
            coefficient = float(match.group(0))
            self.pos = match.end()
            self.expect("*")
        return (sign * coefficient, self.parse_factor())

    def parse_factor(self) -> Expr:
        atom = self.parse_atom()
        if self.peek() == "/":
            self.pos += 1
            return Ratio(numerator=atom, denominator=self.parse_atom())
        return atom

    def parse_atom(self) -> Expr:
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            inner = self.parse_expr()
            self.expect(")")
            return inner
        for head in ("desc", "count", "has"):
            if self.text.startswith(head + "(", self.pos):
                self.pos += len(head) + 1
                argument = self._read_argument()
                return self._build(head, argument)
        self.error("expected desc(...), count(...), has(...), or a parenthesized expression")

    def _read_argument(self) -> str:
        start = self.pos
        depth = 1
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    argument = self.text[start : self.pos]
                    self.pos += 1
                    return argument.strip()
            self.pos += 1
        self.pos = start
        self.error("unclosed argument parenthesis")

    def _build(self, head: str, argument: str) -> Expr:
        if head == "desc":
            if not _NAME_RE.fullmatch(argument):
                self.error(f"bad descriptor name {argument!r}")
            if not is_registered(argument):
                self.error(f"unknown descriptor {argument!r}")
            return DescRef(name=argument)
        try:
            pattern = parse_pattern(argument)
        except PatternParseError as exc:
            raise RuleParseError(f"bad pattern in {head}({argument}): {exc}") from exc
        if head == "count":
            return Count(pattern_text=argument, pattern=pattern)
        return Has(pattern_text=argument, pattern=pattern)


def parse_rule(dsl_text: str) -> Expr:
    """Parse DSL text into an expression tree; deterministic."""
    if not isinstance(dsl_text, str) or not dsl_text.strip():
        raise RuleParseError("empty rule expression", 0)
    return _Parser(dsl_text.strip()).parse()


def print_expr(expr: Expr) -> str:
    if isinstance(expr, DescRef):
        return f"desc({expr.name})"
    if isinstance(expr, Count):
        return f"count({expr.pattern_text})"
    if isinstance(expr, Has):
        return f"has({expr.pattern_text})"
    if isinstance(expr, Ratio):
        return f"{_print_operand(expr.numerator)} / {_print_operand(expr.denominator)}"
    if isinstance(expr, Sum):
        parts = []
        for i, (coefficient, sub) in enumerate(expr.terms):
            magnitude = abs(coefficient)
            body = _print_operand(sub)
            if magnitude != 1.0 or coefficient < 0:
                body = f"{magnitude:g}*{body}"
            if i == 0:
                parts.append(body if coefficient >= 0 else f"-{body}")
            else:
                parts.append(("+ " if coefficient >= 0 else "- ") + body)
        return " ".join(parts)
    raise TypeError(f"not an expression: {expr!r}")


def _print_operand(expr: Expr) -> str:
    text = print_expr(expr)
    if isinstance(expr, (Sum, Ratio)):
        return f"({text})"
    return text


def value_kind(expr: Expr) -> str:
    if isinstance(expr, Has):
        return BINARY
    if isinstance(expr, Count):
        return INTEGER
    if isinstance(expr, DescRef):
        return _REGISTRY[expr.name][0].value_kind
    return REAL


def evaluate_expr(expr: Expr, mol: Molecule, sink: list | None = None) -> float:
    """Evaluate an expression on one molecule; pure.

    Division by zero yields 0.0; the event goes to ``sink`` when given,
    otherwise a :class:`DivisionByZeroWarning` is emitted.
    """
    if isinstance(expr, DescRef):
        from ..descriptors import compute

        return compute(mol, expr.name)
    if isinstance(expr, Count):
        return float(count_matches(mol, expr.pattern))
    if isinstance(expr, Has):
        return 1.0 if has_match(mol, expr.pattern) else 0.0
    if isinstance(expr, Sum):
        return sum(c * evaluate_expr(e, mol, sink) for c, e in expr.terms)
    if isinstance(expr, Ratio):
        denominator = evaluate_expr(expr.denominator, mol, sink)
        if denominator == 0.0:
            message = f"zero denominator in {print_expr(expr)}; result defined as 0"
            if sink is not None:
                sink.append(message)
            else:
                warnings.warn(message, DivisionByZeroWarning, stacklevel=3)
            return 0.0
        return evaluate_expr(expr.numerator, mol, sink) / denominator
    raise TypeError(f"not an expression: {expr!r}")
