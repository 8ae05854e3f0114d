"""Concrete syntax for types, terms and literals.

The printed form round-trips exactly: parsing the printer's output
yields a structurally equal term, and printing again yields the same
string.  Term files may contain `#` line comments and any whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    Absurd,
    Bang,
    CaseSeq,
    Comp,
    Const,
    DecoratedTerm,
    Id,
    Inj1,
    Inj2,
    Op,
    OpSymbol,
    PairSeq,
    Proj1,
    Proj2,
)
from .types import EMPTY_T, UNIT_T, Base, Empty, ObjType, Prod, Sum, Unit

TYPE_KEYWORDS = frozenset({"unit", "empty", "prod", "sum"})


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Printing


def print_type(ty: ObjType) -> str:
    if isinstance(ty, Unit):
        return "unit"
    if isinstance(ty, Empty):
        return "empty"
    if isinstance(ty, Base):
        return ty.name
    if isinstance(ty, Prod):
        return f"prod({print_type(ty.left)}, {print_type(ty.right)})"
    if isinstance(ty, Sum):
        return f"sum({print_type(ty.left)}, {print_type(ty.right)})"
    raise TypeError(f"not an object type: {ty!r}")


def print_value(value: object, ty: ObjType) -> str:
    """Print a carrier value at type `ty`.

    Printing is type-directed, so pairs and tagged sums never collide.
    Base values must be integers; anything else has no literal form.
    """
    from .model import UNIT

    if isinstance(ty, Unit):
        if value is UNIT:
            return "()"
    elif isinstance(ty, Base):
        if isinstance(value, int) and not isinstance(value, bool):
            return str(value)
    elif isinstance(ty, Prod):
        if isinstance(value, tuple) and len(value) == 2:
            return f"({print_value(value[0], ty.left)}, {print_value(value[1], ty.right)})"
    elif isinstance(ty, Sum):
        if isinstance(value, tuple) and len(value) == 2 and value[0] in ("L", "R"):
            if value[0] == "L":
                return f"l({print_value(value[1], ty.left)})"
            return f"r({print_value(value[1], ty.right)})"
    raise ValueError(f"no literal form for {value!r} at {print_type(ty)}")


def print_term(term: DecoratedTerm) -> str:
    if isinstance(term, Id):
        return f"id({print_type(term.at)})"
    if isinstance(term, Comp):
        return f"comp({print_term(term.outer)}, {print_term(term.inner)})"
    if isinstance(term, Op):
        return f"op({term.symbol.name})"
    if isinstance(term, Proj1):
        return f"proj1({print_type(term.left)}, {print_type(term.right)})"
    if isinstance(term, Proj2):
        return f"proj2({print_type(term.left)}, {print_type(term.right)})"
    if isinstance(term, Inj1):
        return f"inj1({print_type(term.left)}, {print_type(term.right)})"
    if isinstance(term, Inj2):
        return f"inj2({print_type(term.left)}, {print_type(term.right)})"
    if isinstance(term, PairSeq):
        return f"pair({print_term(term.first)}, {print_term(term.second)})"
    if isinstance(term, CaseSeq):
        return f"case({print_term(term.on_left)}, {print_term(term.on_right)})"
    if isinstance(term, Bang):
        return f"bang({print_type(term.at)})"
    if isinstance(term, Absurd):
        return f"absurd({print_type(term.at)})"
    if isinstance(term, Const):
        return f"const({print_value(term.value, term.at)}, {print_type(term.at)})"
    raise TypeError(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# Scanning


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "int", "punct", "eof"
    text: str
    line: int
    col: int


def _scan(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "(),":
            tokens.append(_Token("punct", ch, line, col))
            i += 1
            col += 1
        elif ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("ident", text[start:i], line, col))
            col += i - start
        elif ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            start = i
            i += 1
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("int", text[start:i], line, col))
            col += i - start
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _scan(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    def expect_punct(self, text: str) -> None:
        tok = self.peek()
        if tok.kind != "punct" or tok.text != text:
            raise self.fail(f"expected {text!r}")
        self.advance()

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.fail("expected a name")
        self.advance()
        return tok.text

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def expect_eof(self) -> None:
        if self.peek().kind != "eof":
            raise self.fail("unexpected trailing input")

    # -- types

    def parse_type(self) -> ObjType:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.fail("expected a type")
        name = self.advance().text
        if name == "unit":
            return UNIT_T
        if name == "empty":
            return EMPTY_T
        if name in ("prod", "sum"):
            self.expect_punct("(")
            left = self.parse_type()
            self.expect_punct(",")
            right = self.parse_type()
            self.expect_punct(")")
            return Prod(left, right) if name == "prod" else Sum(left, right)
        return Base(name)

    # -- raw literals (coerced against a type once it is known)

    def parse_raw_literal(self):
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return ("int", int(tok.text))
        if tok.kind == "ident" and tok.text in ("l", "r"):
            tag = self.advance().text
            self.expect_punct("(")
            inner = self.parse_raw_literal()
            self.expect_punct(")")
            return ("tag", "L" if tag == "l" else "R", inner)
        if self.at_punct("("):
            self.advance()
            if self.at_punct(")"):
                self.advance()
                return ("unit",)
            first = self.parse_raw_literal()
            self.expect_punct(",")
            second = self.parse_raw_literal()
            self.expect_punct(")")
            return ("pair", first, second)
        raise self.fail("expected a literal")

    def coerce_literal(self, raw, ty: ObjType, tok: _Token):
        from .model import UNIT

        if isinstance(ty, Unit) and raw[0] == "unit":
            return UNIT
        if isinstance(ty, Base) and raw[0] == "int":
            return raw[1]
        if isinstance(ty, Prod) and raw[0] == "pair":
            return (
                self.coerce_literal(raw[1], ty.left, tok),
                self.coerce_literal(raw[2], ty.right, tok),
            )
        if isinstance(ty, Sum) and raw[0] == "tag":
            side = ty.left if raw[1] == "L" else ty.right
            return (raw[1], self.coerce_literal(raw[2], side, tok))
        raise ParseError(
            f"literal does not fit type {print_type(ty)}", tok.line, tok.col)

    # -- terms

    def parse_term(self, signature: dict[str, OpSymbol]) -> DecoratedTerm:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.fail("expected a term")
        head = self.advance().text
        self.expect_punct("(")
        term = self._parse_term_body(head, tok, signature)
        self.expect_punct(")")
        return term

    def _parse_term_body(self, head: str, tok: _Token,
                         signature: dict[str, OpSymbol]) -> DecoratedTerm:
        if head == "id":
            return Id(self.parse_type())
        if head == "comp":
            outer = self.parse_term(signature)
            self.expect_punct(",")
            inner = self.parse_term(signature)
            return Comp(outer, inner)
        if head == "pair":
            first = self.parse_term(signature)
            self.expect_punct(",")
            second = self.parse_term(signature)
            return PairSeq(first, second)
        if head == "case":
            on_left = self.parse_term(signature)
            self.expect_punct(",")
            on_right = self.parse_term(signature)
            return CaseSeq(on_left, on_right)
        if head in ("proj1", "proj2", "inj1", "inj2"):
            left = self.parse_type()
            self.expect_punct(",")
            right = self.parse_type()
            ctor = {"proj1": Proj1, "proj2": Proj2, "inj1": Inj1, "inj2": Inj2}[head]
            return ctor(left, right)
        if head == "bang":
            return Bang(self.parse_type())
        if head == "absurd":
            return Absurd(self.parse_type())
        if head == "const":
            lit_tok = self.peek()
            raw = self.parse_raw_literal()
            self.expect_punct(",")
            ty = self.parse_type()
            return Const(self.coerce_literal(raw, ty, lit_tok), ty)
        if head == "op":
            name = self.expect_ident()
            symbol = signature.get(name)
            if symbol is None:
                raise ParseError(
                    f"operation {name!r} is not declared", tok.line, tok.col)
            return Op(symbol)
        raise ParseError(f"unknown term form {head!r}", tok.line, tok.col)


def parse_type(text: str) -> ObjType:
    parser = _Parser(text)
    ty = parser.parse_type()
    parser.expect_eof()
    return ty


def parse_term(text: str, signature: dict[str, OpSymbol] | None = None) -> DecoratedTerm:
    parser = _Parser(text)
    term = parser.parse_term(signature or {})
    parser.expect_eof()
    return term
