"""Parser and printer for connected-sum expressions.

Grammar (whitespace between tokens is ignored):

    Expr  := Term ('#' Term)*
    Term  := [Nat '*'] Block
    Block := 'CP2' | '~CP2' | 'S1xS3' | 'K3' | 'S4'
           | 'Chen(' Int ',' Int ')'
           | 'Custom(' Name ',' Int ',' Int ',' Nat ')'

so e.g. "Chen(3,5) # 2*~CP2 # S1xS3".  Parsing is single-pass recursive
descent with one token of lookahead and no backtracking; every error carries
the 0-based character position where it was detected.

format_expr prints a canonical form: blocks grouped in the fixed order
Chen, K3, CP2, ~CP2, S1xS3, S4, Custom, equal blocks merged, multiplicities
of at least 2 written as 'n*Block'.  Round-tripping through format_expr and
parse_expr preserves the summand multiset (hence the invariants), though not
the original ordering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .blocks import (
    CP2,
    K3,
    S4,
    Block,
    ChenSurface,
    CP2Bar,
    Custom,
    ManifoldExpr,
    S1xS3,
)


class ParseError(ValueError):
    """Syntax error with the character position and what was expected."""

    def __init__(self, message: str, position: int, expected: str = ""):
        self.position = position
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"at position {position}: {message}{detail}")


class UnknownBlockError(ParseError):
    def __init__(self, name: str, position: int):
        self.name = name
        super().__init__(f"unknown block {name!r}", position,
                         "CP2, ~CP2, S1xS3, K3, S4, Chen(...), or Custom(...)")


class ZeroMultiplicityError(ParseError):
    def __init__(self, position: int):
        super().__init__("multiplicity must be at least 1", position)


_TOKEN_RE = re.compile(
    r"(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<punct>[#*(),~-])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num' | 'name' | punctuation itself | 'end'
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    index = 0
    while index < len(source):
        if source[index].isspace():
            index += 1
            continue
        match = _TOKEN_RE.match(source, index)
        if match is None:
            raise ParseError(f"unexpected character {source[index]!r}", index)
        if match.lastgroup == "num":
            tokens.append(_Token("num", match.group("num"), index))
        elif match.lastgroup == "name":
            tokens.append(_Token("name", match.group("name"), index))
        else:
            tokens.append(_Token(match.group("punct"), match.group("punct"), index))
        index = match.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str, expected: str) -> _Token:
        token = self.current
        if token.kind != kind:
            found = repr(token.text) if token.kind != "end" else "end of input"
            raise ParseError(f"found {found}", token.pos, expected)
        return self.advance()

    def parse_expr(self) -> ManifoldExpr:
        summands = [self.parse_term()]
        while self.current.kind == "#":
            self.advance()
            summands.append(self.parse_term())
        if self.current.kind != "end":
            raise ParseError(f"trailing input {self.current.text!r}",
                             self.current.pos, "'#' or end of input")
        return ManifoldExpr(tuple(summands))

    def parse_term(self) -> tuple[Block, int]:
        mult = 1
        if self.current.kind == "num":
            token = self.advance()
            mult = int(token.text)
            if mult == 0:
                raise ZeroMultiplicityError(token.pos)
            self.expect("*", "'*' after multiplicity")
        return self.parse_block(), mult

    def parse_block(self) -> Block:
        token = self.current
        if token.kind == "~":
            self.advance()
            name = self.expect("name", "'CP2' after '~'")
            if name.text != "CP2":
                raise UnknownBlockError("~" + name.text, token.pos)
            return CP2Bar()
        name = self.expect("name", "a block name").text
        if name == "CP2":
            return CP2()
        if name == "S1xS3":
            return S1xS3()
        if name == "K3":
            return K3()
        if name == "S4":
            return S4()
        if name == "Chen":
            self.expect("(", "'(' after 'Chen'")
            x = self.parse_int()
            self.expect(",", "','")
            y = self.parse_int()
            self.expect(")", "')'")
            return ChenSurface(x, y)
        if name == "Custom":
            self.expect("(", "'(' after 'Custom'")
            cname = self.expect("name", "a block name").text
            self.expect(",", "','")
            e = self.parse_int()
            self.expect(",", "','")
            sigma = self.parse_int()
            self.expect(",", "','")
            b1_token = self.expect("num", "a nonnegative integer")
            self.expect(")", "')'")
            return Custom(cname, e, sigma, int(b1_token.text))
        raise UnknownBlockError(name, token.pos)

    def parse_int(self) -> int:
        sign = 1
        if self.current.kind == "-":
            self.advance()
            sign = -1
        token = self.expect("num", "an integer")
        return sign * int(token.text)


def parse_expr(source: str) -> ManifoldExpr:
    """Parse a connected-sum expression.

    >>> parse_expr("K3 # 2*~CP2 # S1xS3").invariants()
    Invariants(e=24, sigma=-18, b1=1)
    """
    return _Parser(source).parse_expr()


# Fixed printing order of the block variants.
_KIND_ORDER = (ChenSurface, K3, CP2, CP2Bar, S1xS3, S4, Custom)


def _sort_key(block: Block) -> tuple:
    rank = next(i for i, cls in enumerate(_KIND_ORDER) if isinstance(block, cls))
    match block:
        case ChenSurface(x=x, y=y):
            return (rank, x, y)
        case Custom(name=name, e=e, sigma=sigma, b1=b1):
            return (rank, name, e, sigma, b1)
        case _:
            return (rank,)


def _format_block(block: Block) -> str:
    match block:
        case ChenSurface(x=x, y=y):
            return f"Chen({x},{y})"
        case K3():
            return "K3"
        case CP2():
            return "CP2"
        case CP2Bar():
            return "~CP2"
        case S1xS3():
            return "S1xS3"
        case S4():
            return "S4"
        case Custom(name=name, e=e, sigma=sigma, b1=b1):
            return f"Custom({name},{e},{sigma},{b1})"
    raise TypeError(f"not a building block: {block!r}")


def format_expr(expr: ManifoldExpr) -> str:
    """Canonical string form; parse_expr(format_expr(m)) has m's multiset.

    >>> format_expr(parse_expr("S1xS3 # K3 # ~CP2 # 1*~CP2"))
    'K3 # 2*~CP2 # S1xS3'
    """
    counts = expr.block_multiset()
    parts = []
    for block in sorted(counts, key=_sort_key):
        mult = counts[block]
        text = _format_block(block)
        parts.append(text if mult == 1 else f"{mult}*{text}")
    return " # ".join(parts)
