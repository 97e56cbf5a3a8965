"""Text format for nc polynomials.

Grammar (whitespace insensitive)::

    expr     := term (('+' | '-') term)*
    term     := ('+' | '-')* factor ('*'? factor)*
    factor   := primary ('^' uint)*
    primary  := rational | var | '(' expr ')' | 'T(' expr ')'
    var      := ('x' | 'h') uint
    rational := uint ('/' uint)?

Juxtaposition multiplies, always left to right; ``T(...)`` is the
involution.  :func:`to_string` emits the canonical form, which parses back
to the same polynomial.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exact import format_fraction
from .freealg import Letter, NcPoly

__all__ = ["ParseError", "parse", "to_string", "print_poly"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


_TOKEN = re.compile(r"(?:(?P<num>\d+)|(?P<var>[xh])(?P<idx>\d+)|(?P<op>[-+*/^()])|(?P<T>T)(?=\s*\())")


class _Parser:
    def __init__(self, text: str, g: int, allow_h: bool):
        self.text = text
        self.g = g
        self.allow_h = allow_h
        self.tokens = self._tokenize()
        self.i = 0

    def _tokenize(self):
        toks = []
        pos = 0
        text = self.text
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            start = pos
            if m.group("num") is not None:
                toks.append(("num", int(m.group("num")), start))
            elif m.group("var") is not None:
                toks.append(("var", (m.group("var"), int(m.group("idx"))), start))
            elif m.group("op") is not None:
                toks.append((m.group("op"), None, start))
            else:
                toks.append(("T", None, start))
            pos = m.end()
        toks.append(("end", None, len(text)))
        return toks

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    # expr := term (('+'|'-') term)*
    def expr(self) -> NcPoly:
        out = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> NcPoly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        out = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                out = out * self.factor()
            elif kind in ("num", "var", "(", "T"):
                out = out * self.factor()
            else:
                break
        return out if sign > 0 else -out

    def factor(self) -> NcPoly:
        base = self.primary()
        while self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer")
            self.take()
            base = base ** tok[1]
        return base

    def primary(self) -> NcPoly:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            num = Fraction(value)
            if self.peek()[0] == "/":
                self.take()
                tok = self.peek()
                if tok[0] != "num":
                    self.error("malformed rational")
                self.take()
                if tok[1] == 0:
                    raise ParseError("zero denominator", self.text, tok[2])
                num = num / tok[1]
            return NcPoly.constant(num, self.g)
        if kind == "var":
            self.take()
            letter, idx = value
            if not 1 <= idx <= self.g:
                raise ParseError(f"variable {letter}{idx} outside 1..{self.g}", self.text, pos)
            if letter == "h":
                if not self.allow_h:
                    raise ParseError("h-letters are not allowed here", self.text, pos)
                return NcPoly.h(idx, self.g)
            return NcPoly.x(idx, self.g)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "T":
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner.T
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {kind!r}")


def parse(text: str, g: int, allow_h: bool = False) -> NcPoly:
    """Parse ``text`` into an :class:`NcPoly` in ``g`` variables.

    Raises :class:`ParseError` (a ``ValueError``) with line and column.
    """
    if g < 1:
        raise ValueError("g must be positive")
    p = _Parser(text, g, allow_h)
    if p.peek()[0] == "end":
        p.error("empty expression")
    out = p.expr()
    p.take("end")
    return out


def _word_str(word, g) -> str:
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = str(Letter.from_code(word[i], g))
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def to_string(p: NcPoly) -> str:
    """Canonical text: terms by (degree, lex), reduced rational coefficients."""
    items = p.sorted_terms()
    if not items:
        return "0"
    out = []
    for k, (word, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        if not word:
            body = format_fraction(mag)
        elif mag == 1:
            body = _word_str(word, p.g)
        else:
            body = f"{format_fraction(mag)}*{_word_str(word, p.g)}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


print_poly = to_string
