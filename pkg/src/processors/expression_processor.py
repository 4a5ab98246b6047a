"""Parser and evaluator for product expressions such as "(3,6)*(1,0) - t^2*eta".

Grammar:

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := curve | unit | 'eta' ['^' INT] | 't' ['^' ['-'] INT] | INT | '(' expr ')'
    curve  := '(' ['-'] INT ',' ['-'] INT ')' ['_T']
    unit   := "T'" '(' 0 ',' 0 ')'

Products are evaluated left to right through the product engine.
"""

import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

import structlog

from algebra.laurent import t_power
from algebra.skein import SkeinElement
from core.errors import (
    ExpressionError,
    ExpressionSyntaxError,
    ProductError,
    SemanticError,
    UnsupportedProduct,
)
from engine.product import multiply


logger = structlog.get_logger()

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<tprime>T')|(?P<suffix>_T)|(?P<name>[A-Za-z]+)|(?P<op>[()+\-*^,]))")

# parentheses and unary minus signs, counted together
MAX_NESTING = 100


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(source: str) -> List[Token]:
    """Split source into tokens; the last token is always 'end'"""
    tokens: List[Token] = []
    position = 0
    while position < len(source):
        if source[position:].strip() == "":
            break
        match = _TOKEN.match(source, position)
        if match is None:
            start = position + len(source[position:]) - len(source[position:].lstrip())
            raise ExpressionSyntaxError(f"Unexpected character {source[start]!r}", start, source)
        kind = match.lastgroup
        text = match.group(kind)
        offset = match.start(kind)
        if kind == "name" and text not in ("t", "eta"):
            raise ExpressionSyntaxError(f"Unknown name {text!r}", offset, source)
        tokens.append(Token(text if kind in ("op", "name") else kind, text, offset))
        position = match.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


# -- syntax tree ----------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    p: int
    q: int

    def to_text(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class Unit:
    def to_text(self) -> str:
        return "T'(0,0)"


@dataclass(frozen=True)
class Eta:
    power: int = 1

    def to_text(self) -> str:
        return "eta" if self.power == 1 else f"eta^{self.power}"


@dataclass(frozen=True)
class Scalar:
    """Integer literal or t-power"""
    value: int = 1
    exponent: int = 0

    def to_text(self) -> str:
        if self.exponent == 0:
            return str(self.value)
        return "t" if self.exponent == 1 else f"t^{self.exponent}"


@dataclass(frozen=True)
class Negate:
    operand: "Expression"

    def to_text(self) -> str:
        return f"-{_wrap(self.operand, 2)}"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expression"
    right: "Expression"

    def to_text(self) -> str:
        if self.op == "*":
            return f"{_wrap(self.left, 1)}*{_wrap(self.right, 2)}"
        return f"{_wrap(self.left, 0)} {self.op} {_wrap(self.right, 1)}"


Expression = Union[Curve, Unit, Eta, Scalar, Negate, BinaryOp]


def _precedence(node: Expression) -> int:
    if isinstance(node, BinaryOp):
        return 1 if node.op == "*" else 0
    if isinstance(node, Negate):
        return 2
    return 3


def _wrap(node: Expression, minimum: int) -> str:
    text = node.to_text()
    return text if _precedence(node) >= minimum else f"({text})"


# -- parser ---------------------------------------------------------------

class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def peek(self, ahead: int) -> Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        if token.kind != "end":
            self.index += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            found = "end of input" if self.current.kind == "end" else repr(self.current.text)
            raise ExpressionSyntaxError(f"Expected {what}, found {found}", self.current.offset, self.source)
        return self.advance()

    def parse(self) -> Expression:
        if self.current.kind == "end":
            raise ExpressionSyntaxError("Empty expression", 0, self.source)
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected {self.current.text!r}", self.current.offset, self.source)
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            node = BinaryOp(op, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.unary()
        while self.current.kind == "*":
            self.advance()
            node = BinaryOp("*", node, self.unary())
        return node

    def unary(self) -> Expression:
        if self.current.kind == "-":
            self._enter(self.advance())
            node = Negate(self.unary())
            self.depth -= 1
            return node
        return self.factor()

    def factor(self) -> Expression:
        token = self.current
        if token.kind == "(":
            if self._curve_ahead():
                return self.curve()
            self._enter(self.advance())
            node = self.expr()
            self.expect(")", "')'")
            self.depth -= 1
            return node
        if token.kind == "tprime":
            self.advance()
            curve = self.curve()
            if (curve.p, curve.q) != (0, 0):
                raise SemanticError(f"T' applies only to (0,0), got {curve.to_text()}", token.offset)
            return Unit()
        if token.kind == "eta":
            self.advance()
            power = self._optional_power(allow_negative=False)
            return Eta(1 if power is None else power)
        if token.kind == "t":
            self.advance()
            power = self._optional_power(allow_negative=True)
            return Scalar(1, 1 if power is None else power)
        if token.kind == "int":
            self.advance()
            return Scalar(int(token.text), 0)
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ExpressionSyntaxError(f"Expected a curve, scalar or eta, found {found}", token.offset, self.source)

    def _enter(self, token: Token) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ExpressionSyntaxError(f"Nesting deeper than {MAX_NESTING} levels", token.offset, self.source)

    def _curve_ahead(self) -> bool:
        """'(' [-] INT ',' starts a curve literal"""
        step = 1
        if self.peek(step).kind == "-":
            step += 1
        return self.peek(step).kind == "int" and self.peek(step + 1).kind == ","

    def _signed_int(self) -> int:
        negative = False
        if self.current.kind == "-":
            self.advance()
            negative = True
        value = int(self.expect("int", "an integer").text)
        return -value if negative else value

    def curve(self) -> Curve:
        self.expect("(", "'('")
        p = self._signed_int()
        self.expect(",", "','")
        q = self._signed_int()
        self.expect(")", "')'")
        if self.current.kind == "suffix":
            self.advance()
        return Curve(p, q)

    def _optional_power(self, allow_negative: bool) -> Optional[int]:
        if self.current.kind != "^":
            return None
        self.advance()
        if self.current.kind == "-" and not allow_negative:
            raise SemanticError("eta powers must be nonnegative", self.current.offset)
        return self._signed_int()


def parse_expression(source: str) -> Expression:
    return _Parser(source).parse()


def evaluate(node: Expression) -> SkeinElement:
    """Evaluate an expression tree; '*' goes through the product engine"""
    if isinstance(node, Curve):
        return SkeinElement.from_raw((node.p, node.q))
    if isinstance(node, Unit):
        return SkeinElement.scalar(1)
    if isinstance(node, Eta):
        return SkeinElement.eta(node.power)
    if isinstance(node, Scalar):
        return SkeinElement.scalar(t_power(node.exponent) * node.value)
    if isinstance(node, Negate):
        return -evaluate(node.operand)
    # long sums and products are left-nested chains; walk the spine without recursing
    spine: List[BinaryOp] = []
    while isinstance(node, BinaryOp):
        spine.append(node)
        node = node.left
    value = evaluate(node)
    for op in reversed(spine):
        right = evaluate(op.right)
        if op.op == "+":
            value = value + right
        elif op.op == "-":
            value = value - right
        else:
            value = multiply(value, right)
    return value


class ExpressionProcessor:
    """Parse and evaluate batches of expressions, keeping per-line errors"""

    def __init__(self):
        self.errors: List[str] = []
        self.unsupported: List[Tuple[int, UnsupportedProduct]] = []
        self.evaluated = 0

    def process(self, source: str) -> SkeinElement:
        logger.debug(f"Evaluating expression: {source}")
        element = evaluate(parse_expression(source))
        self.evaluated += 1
        return element

    def process_lines(self, lines: Iterator[str]) -> List[Optional[SkeinElement]]:
        """Evaluate each non-blank line; failures are recorded and yield None.

        Unsupported products are kept apart from input errors, with their line numbers.
        """
        results: List[Optional[SkeinElement]] = []
        for number, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                results.append(self.process(line.strip()))
            except UnsupportedProduct as e:
                self.unsupported.append((number, e))
                logger.warning(f"Line {number}: {e}")
                results.append(None)
            except (ExpressionError, ProductError) as e:
                error_msg = f"Line {number}: {e}"
                self.errors.append(error_msg)
                logger.error(error_msg)
                results.append(None)
        return results

