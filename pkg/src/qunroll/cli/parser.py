"""Expression language: tokenizer, recursive-descent parser and canonical printer.

Grammar (precedence low to high)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" exponent)?
    exponent:= "-"? INT | "(" "-"? INT ")"
    atom    := INT ("/" INT)? | NAME call? | "(" expr ")" | "[" expr "," expr "]"

Names: generators ``E1 F1 K1 Kinv1 H1``, divided powers ``Ed1(t) Fd1(t)``,
scalars ``v q qnum(n, d) cyclo(n)`` and the maps ``Delta S eps``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message, self.line, self.column = message, line, column


class UnknownGenerator(ParseError):
    pass


class ArityError(ParseError):
    pass


# ---------------------------------------------------------------------------
# syntax tree; positions do not take part in equality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Num(Node):
    value: Fraction
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Sym(Node):
    name: str  # "v" or "q"
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class QNum(Node):
    n: int
    d: int
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Cyclo(Node):
    n: int
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Gen(Node):
    kind: str  # E F K Kinv H Ed Fd
    index: int
    arg: int | None = None
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg(Node):
    x: Node
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # + - *
    left: Node
    right: Node
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: int
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Bracket(Node):
    left: Node
    right: Node
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Call(Node):
    fn: str  # Delta S eps
    arg: Node
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


GENERATORS = ("E", "F", "K", "Kinv", "H", "Ed", "Fd")
MAPS = ("Delta", "S", "eps")
_GEN_RE = re.compile(r"(Ed|Fd|Kinv|E|F|K|H)([0-9]+)")


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT NAME OP EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<INT>[0-9]+)|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<OP>[-+*^/(),\[\]])")


def tokenize(src: str) -> list[Token]:
    out = []
    i, line, col = 0, 1, 1
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if not m:
            raise ParseError(f"unexpected character {src[i]!r}", line, col)
        text = m.group()
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, text, line, col))
        for ch in text:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        i = m.end()
    out.append(Token("EOF", "", line, col))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str, rank: int | None):
        self.toks = tokenize(src)
        self.i = 0
        self.rank = rank

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.column)

    def _describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "EOF" else repr(tok.text)

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self._describe(self.tok)}")
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self._describe(self.tok)}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), pos=(op.line, op.column))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*"):
            op = self.advance()
            node = BinOp("*", node, self.unary(), pos=(op.line, op.column))
        return node

    def unary(self) -> Node:
        if self.at("-"):
            op = self.advance()
            return Neg(self.unary(), pos=(op.line, op.column))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.at("^"):
            op = self.advance()
            base = Pow(base, self.exponent(), pos=(op.line, op.column))
            if self.at("^"):
                raise self.error("chained '^' needs parentheses")
        return base

    def exponent(self) -> int:
        if self.at("("):
            self.advance()
            n = self.signed_int()
            self.expect(")")
            return n
        return self.signed_int()

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        if self.tok.kind != "INT":
            raise self.error(f"expected an integer, found {self._describe(self.tok)}")
        return sign * int(self.advance().text)

    def int_args(self, name: Token, count: int) -> list[int]:
        if not self.at("("):
            raise self.error(f"{name.text} takes {count} integer argument(s)", name, ArityError)
        self.advance()
        args = [self.signed_int()]
        while self.at(","):
            self.advance()
            args.append(self.signed_int())
        self.expect(")")
        if len(args) != count:
            raise self.error(f"{name.text} takes {count} argument(s), got {len(args)}", name, ArityError)
        return args

    def no_call(self, name: Token):
        if self.at("("):
            raise self.error(f"{name.text} takes no arguments", name, ArityError)

    def atom(self) -> Node:
        tok = self.tok
        pos = (tok.line, tok.column)
        if tok.kind == "INT":
            self.advance()
            value = Fraction(int(tok.text))
            if self.at("/"):
                self.advance()
                if self.tok.kind != "INT":
                    raise self.error(f"expected a denominator, found {self._describe(self.tok)}")
                den_tok = self.advance()
                if int(den_tok.text) == 0:
                    raise self.error("zero denominator", den_tok)
                value /= int(den_tok.text)
            return Num(value, pos=pos)
        if tok.kind == "NAME":
            return self.name()
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if self.at("["):
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right, pos=pos)
        raise self.error(f"unexpected {self._describe(tok)}")

    def name(self) -> Node:
        tok = self.advance()
        pos = (tok.line, tok.column)
        name = tok.text
        if name in ("v", "q"):
            self.no_call(tok)
            return Sym(name, pos=pos)
        if name == "qnum":
            n, d = self.int_args(tok, 2)
            if d < 1:
                raise self.error("qnum needs d >= 1", tok, ArityError)
            return QNum(n, d, pos=pos)
        if name == "cyclo":
            (n,) = self.int_args(tok, 1)
            if n < 1:
                raise self.error("cyclo needs n >= 1", tok, ArityError)
            return Cyclo(n, pos=pos)
        if name in MAPS:
            if not self.at("("):
                raise self.error(f"{name} takes one argument", tok, ArityError)
            self.advance()
            arg = self.expr()
            if self.at(","):
                raise self.error(f"{name} takes one argument", tok, ArityError)
            self.expect(")")
            return Call(name, arg, pos=pos)
        m = _GEN_RE.fullmatch(name)
        if not m:
            raise self.error(f"unknown name {name!r}", tok, UnknownGenerator)
        kind, index = m.group(1), int(m.group(2))
        if index < 1 or (self.rank is not None and index > self.rank):
            bound = "" if self.rank is None else f" (rank {self.rank})"
            raise self.error(f"generator index {index} out of range{bound}", tok, UnknownGenerator)
        if kind in ("Ed", "Fd"):
            (t,) = self.int_args(tok, 1)
            if t < 0:
                raise self.error("divided power order must be >= 0", tok, ArityError)
            return Gen(kind, index, t, pos=pos)
        self.no_call(tok)
        return Gen(kind, index, pos=pos)


def parse(src: str, rank: int | None = None) -> Node:
    """Parse ``src``; with ``rank`` given, generator indices above it are rejected."""
    return _Parser(src, rank).parse()


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}
_NEG, _POW, _ATOM = 3, 4, 5


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG
    if isinstance(node, Pow):
        return _POW
    if isinstance(node, Num) and node.value.denominator != 1:
        return _POW  # "3/4" must be wrapped before "^"
    return _ATOM


def _wrap(node: Node, ok: bool) -> str:
    s = to_source(node)
    return s if ok else f"({s})"


def to_source(node: Node) -> str:
    """Canonical source text; ``parse(to_source(e)) == e``."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, QNum):
        return f"qnum({node.n}, {node.d})"
    if isinstance(node, Cyclo):
        return f"cyclo({node.n})"
    if isinstance(node, Gen):
        return f"{node.kind}{node.index}" + ("" if node.arg is None else f"({node.arg})")
    if isinstance(node, Neg):
        return "-" + _wrap(node.x, _prec(node.x) >= _NEG)
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = _wrap(node.left, _prec(node.left) >= p)
        right = _wrap(node.right, _prec(node.right) > p)
        return f"{left}*{right}" if node.op == "*" else f"{left} {node.op} {right}"
    if isinstance(node, Pow):
        return _wrap(node.base, _prec(node.base) == _ATOM) + f"^{node.exp}"
    if isinstance(node, Bracket):
        return f"[{to_source(node.left)}, {to_source(node.right)}]"
    if isinstance(node, Call):
        return f"{node.fn}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")
