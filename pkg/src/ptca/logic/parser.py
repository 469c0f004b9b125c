"""Recursive-descent parser for formulas and sequents.

Grammar (loosest first)::

    sequent  := list? '=>' list?
    list     := impl (',' impl)*
    impl     := or ('->' impl)?            right-associative
    or       := and ('|' and)*             left-associative
    and      := unary ('&' unary)*         left-associative
    unary    := '~' unary | primary
    primary  := '(' impl ')' | P '(' term ')' | term '=' term | IDENT
    term     := ('0' | IDENT | '(' term ')') ('+' '1')*

``P`` is one of ``N``, ``E``, ``O``.  The typeset symbols ``¬ ∨ ∧ ⊃ ↪``
are accepted as aliases of ``~ | & -> =>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    PREDICATES,
    And,
    EqAtom,
    Formula,
    Impl,
    Neg,
    Or,
    PredAtom,
    PropVar,
    Sequent,
    Succ,
    Term,
    Var,
    Zero,
)


class ParseError(ValueError):
    """Malformed formula or sequent text; ``pos`` is a character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class LexicalError(ParseError):
    pass


class FormulaSyntaxError(ParseError):
    pass


class ArityError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


_ALIASES = {"¬": "~", "∨": "|", "∧": "&", "⊃": "->", "→": "->", "↪": "=>", "⊢": "=>"}
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>[0-9]+)"
    r"|(?P<op>->|=>|[~|&=+(),]|[¬∨∧⊃→↪⊢]))"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise LexicalError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        if m.group("ident") is not None:
            tokens.append(Token("ident", m.group("ident"), start))
        elif m.group("num") is not None:
            num = m.group("num")
            if num not in ("0", "1"):
                raise LexicalError(f"unsupported numeral {num!r}", start, text)
            tokens.append(Token(num, num, start))
        else:
            op = _ALIASES.get(m.group("op"), m.group("op"))
            tokens.append(Token(op, op, start))
        pos = m.end()
    tokens.append(Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {kind!r}, found {self.describe(tok)}", tok)
        return self.take()

    def describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.value)

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(message, tok.pos, self.text)

    # -- formulas
    def impl(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "->":
            self.take()
            return Impl(left, self.impl())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek().kind == "~":
            self.take()
            return Neg(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            mark = self.i
            try:
                return self.equation()
            except ParseError:
                self.i = mark
            self.take()
            f = self.impl()
            self.expect(")")
            return f
        if tok.kind == "ident" and self.peek(1).kind == "(":
            if tok.value not in PREDICATES:
                self.fail(f"unknown predicate {tok.value!r}", tok)
            return self.predicate()
        if tok.kind in ("ident", "0"):
            if self.peek(1).kind in ("=", "+") or tok.kind == "0":
                return self.equation()
            self.take()
            return PropVar(tok.value)
        self.fail(f"expected a formula, found {self.describe(tok)}", tok)

    def predicate(self) -> Formula:
        name = self.take()
        self.take()  # '('
        if self.peek().kind == ")":
            raise ArityError(f"predicate {name.value} takes one argument, got none", name.pos, self.text)
        arg = self.term()
        if self.peek().kind == ",":
            raise ArityError(f"predicate {name.value} takes one argument", self.peek().pos, self.text)
        self.expect(")")
        return PredAtom(name.value, arg)

    def equation(self) -> Formula:
        left = self.term()
        self.expect("=")
        return EqAtom(left, self.term())

    # -- terms
    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "0":
            self.take()
            t: Term = Zero()
        elif tok.kind == "ident":
            self.take()
            t = Var(tok.value)
        elif tok.kind == "(":
            self.take()
            t = self.term()
            self.expect(")")
        else:
            self.fail(f"expected a term, found {self.describe(tok)}", tok)
        while self.peek().kind == "+":
            self.take()
            self.expect("1")
            t = Succ(t)
        return t

    # -- sequents
    def formula_list(self, stop: set[str]) -> list[Formula]:
        out: list[Formula] = []
        if self.peek().kind in stop:
            return out
        out.append(self.impl())
        while self.peek().kind == ",":
            self.take()
            out.append(self.impl())
        return out

    def end(self):
        tok = self.peek()
        if tok.kind != "eof":
            if tok.kind == "=>":
                self.fail("more than one '=>' in sequent", tok)
            self.fail(f"unexpected {self.describe(tok)}", tok)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    if p.peek().kind == "eof":
        p.fail("empty formula")
    f = p.impl()
    p.end()
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    arrows = [t for t in p.toks if t.kind == "=>"]
    if not arrows:
        raise FormulaSyntaxError("sequent needs '=>'", len(text), text)
    if len(arrows) > 1:
        raise FormulaSyntaxError("more than one '=>' in sequent", arrows[1].pos, text)
    ant = p.formula_list({"=>"})
    p.expect("=>")
    suc = p.formula_list({"eof"})
    p.end()
    return Sequent(tuple(ant), tuple(suc))


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t
