"""Recursive-descent parser for scalar and algebra expressions.

Grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" exponent)?
    exponent:= ["-"] INT | "(" ["-"] INT ")"
    atom    := INT | IDENT | "(" expr ")"

``q`` is the scalar parameter unless the alphabet defines a generator of that
name.  Negative exponents and division are only accepted on scalar operands;
juxtaposition is rejected, products need an explicit ``*``.
"""

import re

from .errors import ParseError, UnknownGenerator
from .scalar import ONE, Q, Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, alphabet):
        from .algebra import Element

        self.Element = Element
        self.text = text
        self.alphabet = alphabet
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"expected {value!r}", tok[2], self.text)
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r} (use '*' for products)")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                value = value * rhs
            else:
                divisor = rhs.as_scalar()
                if divisor is None:
                    raise self.error("division by a non-scalar", op_tok)
                if divisor.is_zero():
                    raise self.error("division by zero", op_tok)
                value = value * divisor.inverse()
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            caret = self.take()
            exp = self.exponent()
            if exp < 0:
                s = base.as_scalar()
                if s is None:
                    raise self.error("negative exponent on a non-scalar", caret)
                if s.is_zero():
                    raise self.error("negative power of zero", caret)
                return self.Element.scalar(self.alphabet, s ** exp)
            result = self.Element.scalar(self.alphabet, ONE)
            for _ in range(exp):
                result = result * base
            return result
        return base

    def exponent(self):
        paren = False
        if self.peek()[1] == "(" and self.peek()[0] == "op":
            self.take()
            paren = True
        sign = 1
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise ParseError("expected integer exponent", tok[2], self.text)
        if paren:
            self.expect(")")
        return sign * int(tok[1])

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return self.Element.scalar(self.alphabet, Scalar((int(value),)))
        if kind == "ident":
            if value in self.alphabet:
                return self.Element.generator(self.alphabet, value)
            if value == "q":
                return self.Element.scalar(self.alphabet, Q)
            raise UnknownGenerator(f"unknown generator {value!r} at position {pos}")
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {value!r}", pos, self.text)


def parse(text, alphabet):
    """Parse ``text`` into an Element of the free algebra on ``alphabet``."""
    if hasattr(alphabet, "alphabet"):
        alphabet = alphabet.alphabet
    return _Parser(text, alphabet).parse()


def parse_scalar(text):
    from .algebra import Alphabet

    element = _Parser(text, Alphabet(())).parse()
    return element.as_scalar()
