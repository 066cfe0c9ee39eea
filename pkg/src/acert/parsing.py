"""Element text grammar shared by every ring and the CLI::

    element := ['-'|'+'] term (('+'|'-') term)*
    term    := coef | [coef '*'] factor ('*' factor)*
    factor  := NAME ['^' NAT]
    coef    := NAT ['/' NAT]

Whitespace is insignificant.  Factors are multiplied in the order written, so
Weyl-algebra input is normally ordered on the fly (``d1*x1`` is
``x1*d1 + 1``).
"""
from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import ElementSyntaxError

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_]*\d*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ElementSyntaxError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ElementSyntaxError(msg, self.text, tok[2])

    def expect_nat(self):
        tok = self.take()
        if tok[0] != "num":
            self.fail("expected a natural number", tok)
        return int(tok[1])

    def element(self):
        ring = self.ring
        total = ring.zero()
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        elif tok[0] == "end":
            self.fail("empty element")
        total = total + self.term().scale(sign)
        while True:
            tok = self.peek()
            if tok[0] == "end":
                return total
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                total = total + self.term().scale(sign)
            else:
                self.fail(f"expected '+' or '-', found {tok[1]!r}")

    def term(self):
        ring = self.ring
        value = ring.one()
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            coef = mpq(int(tok[1]))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.expect_nat()
                if den == 0:
                    self.fail("zero denominator", self.toks[self.i - 1])
                coef = mpq(int(tok[1]), den)
            value = value.scale(coef)
            if self.peek()[:2] != ("op", "*"):
                return value
            self.take()
        value = value * self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        tok = self.take()
        if tok[0] != "name":
            self.fail("expected a variable", tok)
        gen = self.ring.generator(tok[1], self.text, tok[2])
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return gen ** self.expect_nat()
        return gen


def parse_element(text, ring):
    """Parse ``text`` into an element of ``ring`` (a :class:`PolyRing` or a
    :class:`RingSignature`)."""
    if not isinstance(text, str):
        raise ElementSyntaxError("element must be a string", str(text), 0)
    return _Parser(text, ring).element()
