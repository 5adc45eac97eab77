"""
Expression language shared by the engine and the command line.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' factor) | ('/' NUMBER) | factor)*     juxtaposition multiplies
    factor := ('-' | '+') factor | atom ('^' NUMBER)?
    atom   := NUMBER | NAME | '(' expr ')' | '[' expr ',' expr ']'

`[a, b]` is the commutator ab - ba. Names are a letter optionally followed by
digits, so `xz` reads as x*z while `y2` is a single name. The same parser builds
noncommutative polynomials (x, y, z, y1..yn, z1..zn) and commutative polynomials
over a named ring (u, v, l1, r3, ...).

Elements of U(B) are written the way TensorPoly prints them:

    tensor := a'⊗b | a' | 1⊗b        a, b factors of B, e.g. (x*z)'⊗z^2
"""

import re
from fractions import Fraction
from typing import Any, Callable, List, Sequence, Tuple
import logging

from algebra.errors import ExpressionSyntaxError
from algebra.ncpoly import DEFAULT_GENERATORS, LETTER_NAMES, NCPoly
from algebra.uenv import CommPoly, Ring, TensorPoly

# Configure logging
logger = logging.getLogger(__name__)


TOKEN_RE = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z][0-9]*)|(?P<op>[-+*/^()\[\],'⊗]))")

Token = Tuple[str, str, int]


def tokenize(text: str) -> List[Token]:
    """Split `text` into (kind, value, position) tokens."""
    tokens: List[Token] = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if not match or match.end() == position:
            raise ExpressionSyntaxError("unexpected character", text, position)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _Parser:
    """Recursive-descent parser evaluating directly into ring elements."""

    def __init__(self, text: str, constant: Callable[[Fraction], Any], variable: Callable[[str], Any]):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.constant = constant
        self.variable = variable

    def peek(self) -> Token:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def take(self, value: str = None) -> Token:
        token = self.peek()
        if token[0] == "end" or (value is not None and token[1] != value):
            expected = f"'{value}'" if value else "a token"
            raise ExpressionSyntaxError(f"expected {expected}", self.text, token[2])
        self.index += 1
        return token

    def parse(self) -> Any:
        if not self.tokens:
            raise ExpressionSyntaxError("empty expression", self.text, 0)
        result = self.expr()
        token = self.peek()
        if token[0] != "end":
            raise ExpressionSyntaxError(f"unexpected '{token[1]}'", self.text, token[2])
        return result

    def expr(self) -> Any:
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            result = result + right if op == "+" else result - right
        return result

    def starts_factor(self, token: Token) -> bool:
        return token[0] in ("number", "name") or token[1] in ("(", "[")

    def term(self) -> Any:
        result = self.factor()
        while True:
            token = self.peek()
            if token[0] == "op" and token[1] == "*":
                self.take()
                result = result * self.factor()
            elif token[0] == "op" and token[1] == "/":
                self.take()
                number = self.take()
                if number[0] != "number" or int(number[1]) == 0:
                    raise ExpressionSyntaxError("division only by a nonzero integer", self.text, number[2])
                result = result * self.constant(Fraction(1, int(number[1])))
            elif self.starts_factor(token):
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Any:
        token = self.peek()
        if token[0] == "op" and token[1] == "-":
            self.take()
            return -self.factor()
        if token[0] == "op" and token[1] == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            exponent = self.take()
            if exponent[0] != "number":
                raise ExpressionSyntaxError("exponent must be a non-negative integer", self.text, exponent[2])
            return base ** int(exponent[1])
        return base

    def atom(self) -> Any:
        token = self.take()
        kind, value, position = token
        if kind == "number":
            return self.constant(Fraction(int(value)))
        if kind == "name":
            try:
                return self.variable(value)
            except KeyError:
                raise ExpressionSyntaxError(f"unknown name '{value}'", self.text, position) from None
        if value == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if value == "[":
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            return left * right - right * left
        raise ExpressionSyntaxError(f"unexpected '{value}'", self.text, position)


def generator_aliases(n: int = DEFAULT_GENERATORS) -> dict:
    """Accepted names for generators of B_n: y1..yn and z1..zn, plus x, y, z when n = 3."""
    aliases = {}
    for i in range(1, n + 1):
        aliases[f"y{i}"] = i
        aliases[f"z{i}"] = i
    if n == DEFAULT_GENERATORS:
        for index, letter in LETTER_NAMES.items():
            aliases[letter] = index
    return aliases


def parse_nc(text: str, n: int = DEFAULT_GENERATORS) -> NCPoly:
    """
    Parse an element of B_n.

    Example:
        >>> str(parse_nc("x + z[x, z]"))
        'x + z*x*z - z^2*x'
    """
    aliases = generator_aliases(n)
    return _Parser(
        text,
        constant=lambda value: NCPoly.constant(value, n),
        variable=lambda name: NCPoly.generator(aliases[name], n),
    ).parse()


class _TensorParser(_Parser):
    """Sums and products of tensors a'⊗b whose legs are factors of B."""

    def __init__(self, text: str, n: int):
        super().__init__(text, constant=lambda value: TensorPoly.constant(value, n), variable=self._no_variable)
        self.n = n
        self.aliases = generator_aliases(n)
        self.in_leg = False

    @staticmethod
    def _no_variable(name: str):
        raise KeyError(name)

    def leg(self) -> NCPoly:
        saved = self.in_leg, self.constant, self.variable
        self.in_leg = True
        self.constant = lambda value: NCPoly.constant(value, self.n)
        self.variable = lambda name: NCPoly.generator(self.aliases[name], self.n)
        try:
            return super().factor()
        finally:
            self.in_leg, self.constant, self.variable = saved

    def factor(self) -> Any:
        if self.in_leg:
            return super().factor()
        token = self.peek()
        if token[0] == "op" and token[1] in ("-", "+"):
            self.take()
            inner = self.factor()
            return -inner if token[1] == "-" else inner

        left = self.leg()
        primed = self.peek()[0] == "op" and self.peek()[1] == "'"
        if primed:
            self.take("'")
        if self.peek()[0] == "op" and self.peek()[1] == "⊗":
            marker = self.take()
            if not primed and left.degree() > 0:
                raise ExpressionSyntaxError("left leg of ⊗ needs a prime", self.text, marker[2])
            return TensorPoly.tensor(left, self.leg())
        if primed:
            return TensorPoly.left_of(left)
        if left.degree() <= 0:
            return TensorPoly.constant(left.constant_term(), self.n)
        raise ExpressionSyntaxError("an element of B needs ' or ⊗ here", self.text, token[2])


def parse_tensor(text: str, n: int = DEFAULT_GENERATORS) -> TensorPoly:
    """
    Parse an element of U(B_n) in the printed form of TensorPoly.

    Example:
        >>> str(parse_tensor("1 + z'⊗z"))
        "1 + z'⊗z"
    """
    return _TensorParser(text, n).parse()


def parse_comm(text: str, ring: Sequence[str]) -> CommPoly:
    """Parse a commutative polynomial over the named ring."""
    ring: Ring = tuple(ring)

    def variable(name: str) -> CommPoly:
        if name not in ring:
            raise KeyError(name)
        return CommPoly.variable(name, ring)

    return _Parser(text, constant=lambda value: CommPoly.constant(value, ring), variable=variable).parse()
