"""Recursive-descent parser for polynomial text.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (['*'] unary)*       # '*' may be omitted before a name or '('
    unary   := ('-' | '+') unary | power
    power   := primary ('^' INTEGER)?
    primary := INTEGER | NAME | '(' expr ')'

so ``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``, and
``-x^2`` means ``-(x^2)``.  Names are identifiers ``[A-Za-z_][A-Za-z0-9_]*``
and must be declared ring variables.
"""

import re

from .errors import ParseError, UnknownVariable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text):
    """List of (kind, value, position); kind is 'int', 'name', 'op' or 'end'."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only whitespace remains
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self):
        result = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.unary()
            elif kind == "name" or (kind == "op" and value == "("):
                result = result * self.unary()
            else:
                return result

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            operand = self.unary()
            return -operand if value == "-" else operand
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, _ = self.peek()
            if kind != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            return base ** value
        return base

    def primary(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return self.ring.constant(value)
        if kind == "name":
            try:
                return self.ring.gen(value)
            except KeyError:
                raise UnknownVariable(value, pos, self.text) from None
        if kind == "op" and value == "(":
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {value!r}", tok)


def parse_polynomial(text, ring):
    """Parse ``text`` into a Polynomial of ``ring``."""
    return _Parser(text, ring).parse()
