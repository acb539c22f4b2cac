"""Parsing, evaluation, and printing of multivector expressions.

Grammar (whitespace between tokens is ignored):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | atom ('^' uint)?
    atom     := rational | blade | '(' expr ')' | fn '(' expr ')'
    fn       := 'rev' | 'gi' | 'conj' | 'even' | 'odd' | 'N'
    rational := uint ('/' uint)?
    blade    := 'e' digit+  |  'e' '{' uint (',' uint)* '}'

A blade symbol records its generator indices exactly as written: repeated
or out-of-order indices are allowed and reduce on evaluation through the
algebra relations, so "e21" evaluates to -e12 and "e11" in Cl(0,1) to -1.
The digit form is only accepted when the algebra has at most 9 generators.
There is no implicit multiplication and no float literal; negative numbers
are formed with the unary minus.  pretty_print emits terms in ascending
blade-mask order with canonical ascending blade names and round-trips
through parse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core_algebra import (
    Multivector,
    Signature,
    blade_name,
    clifford_conjugation,
    even_part,
    grade_involution,
    norm,
    odd_part,
    reversion,
)
from .errors import ParseError

FUNCTIONS = {
    "rev": reversion,
    "gi": grade_involution,
    "conj": clifford_conjugation,
    "even": even_part,
    "odd": odd_part,
    "N": norm,
}

_SYMBOLS = set("+-*/^(){},")


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", "symbol", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("number", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(Token("name", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(Token("symbol", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", len(text)))
    return tokens


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class BladeSym:
    indices: tuple[int, ...]  # generator indices exactly as written


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", or "*"
    left: object
    right: object


class _Parser:
    def __init__(self, tokens: list[Token], sig: Signature):
        self.tokens = tokens
        self.sig = sig
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def at_symbol(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "symbol" and token.text == text

    def expect_symbol(self, text: str) -> Token:
        if not self.at_symbol(text):
            token = self.peek()
            raise ParseError(f"expected {text!r}, found {token.text!r}", token.pos)
        return self.advance()

    def parse_expr(self):
        node = self.parse_term()
        while self.at_symbol("+") or self.at_symbol("-"):
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.at_symbol("*"):
            self.advance()
            node = BinOp("*", node, self.parse_factor())
        return node

    def parse_factor(self):
        if self.at_symbol("-"):
            self.advance()
            return Neg(self.parse_factor())
        node = self.parse_atom()
        if self.at_symbol("^"):
            self.advance()
            token = self.peek()
            if token.kind != "number":
                raise ParseError("exponent must be a non-negative integer", token.pos)
            self.advance()
            node = Pow(node, int(token.text))
        return node

    def parse_atom(self):
        token = self.peek()
        if token.kind == "number":
            self.advance()
            value = Fraction(int(token.text))
            if self.at_symbol("/"):
                self.advance()
                denom = self.peek()
                if denom.kind != "number":
                    raise ParseError("expected denominator digits", denom.pos)
                self.advance()
                if int(denom.text) == 0:
                    raise ParseError("zero denominator", denom.pos)
                value = Fraction(int(token.text), int(denom.text))
            return Num(value)
        if token.kind == "symbol" and token.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_symbol(")")
            return node
        if token.kind == "name":
            if token.text in FUNCTIONS:
                self.advance()
                self.expect_symbol("(")
                node = self.parse_expr()
                self.expect_symbol(")")
                return Call(token.text, node)
            if token.text[0] == "e":
                return self.parse_blade()
            raise ParseError(f"unknown name {token.text!r}", token.pos)
        raise ParseError(f"unexpected token {token.text!r}", token.pos)

    def parse_blade(self):
        token = self.advance()
        if len(token.text) > 1:
            digits = token.text[1:]
            if not digits.isdigit():
                raise ParseError(f"unknown name {token.text!r}", token.pos)
            if self.sig.n > 9:
                raise ParseError(
                    "digit blade form is ambiguous beyond 9 generators; use e{i,j,...}",
                    token.pos,
                )
            indices = tuple(int(d) for d in digits)
        else:
            # bare "e": braced form e{1,2,...}
            self.expect_symbol("{")
            collected = []
            while True:
                number = self.peek()
                if number.kind != "number":
                    raise ParseError("expected generator index", number.pos)
                self.advance()
                collected.append(int(number.text))
                if self.at_symbol(","):
                    self.advance()
                    continue
                break
            self.expect_symbol("}")
            indices = tuple(collected)
        for i in indices:
            if i < 1 or i > self.sig.n:
                raise ParseError(f"generator index {i} out of range 1..{self.sig.n}", token.pos)
        return BladeSym(indices)


def parse(text: str, sig: Signature):
    """Parse an expression into an AST, validating blade names against sig."""
    parser = _Parser(_tokenize(text), sig)
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected token {trailing.text!r}", trailing.pos)
    return node


def evaluate(node, sig: Signature) -> Multivector:
    """Evaluate an AST to an exact multivector in Cl(sig)."""
    if isinstance(node, Num):
        return Multivector.scalar(sig, node.value)
    if isinstance(node, BladeSym):
        # reduce the written generator word through the algebra relations
        out = Multivector.one(sig)
        for i in node.indices:
            out = out * Multivector.generator(sig, i)
        return out
    if isinstance(node, Neg):
        return -evaluate(node.arg, sig)
    if isinstance(node, Pow):
        return evaluate(node.base, sig) ** node.exponent
    if isinstance(node, Call):
        return FUNCTIONS[node.fn](evaluate(node.arg, sig))
    if isinstance(node, BinOp):
        left = evaluate(node.left, sig)
        right = evaluate(node.right, sig)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")


def parse_multivector(text: str, sig: Signature) -> Multivector:
    """Parse and evaluate in one step."""
    return evaluate(parse(text, sig), sig)


def pretty_print(x: Multivector) -> str:
    """Canonical text form: ascending blade masks, exact coefficients.

    The output round-trips: parse_multivector(pretty_print(x), x.sig) == x.
    """
    terms = x.terms()
    if not terms:
        return "0"
    pieces = []
    for position, (mask, coef) in enumerate(terms):
        name = blade_name(mask, x.sig.n)
        magnitude = abs(coef)
        if mask == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = name
        else:
            body = f"{magnitude}*{name}"
        if position == 0:
            pieces.append(body if coef > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if coef > 0 else f" - {body}")
    return "".join(pieces)
