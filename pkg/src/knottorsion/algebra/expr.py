"""Parse arithmetic expressions into field elements.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUMBER | NAME | "(" expr ")"

Names are the tower variables of the target field; ``I`` is the imaginary
unit of a big complex field.
"""

import re
from fractions import Fraction

_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


class ExpressionError(ValueError):
    pass


def tokenize(text):
    pos, tokens = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos:].lstrip()[:1]!r} at position {pos}")
        number, name, op = m.groups()
        if number is not None:
            tokens.append(("num", number, m.start(1)))
        elif name is not None:
            tokens.append(("name", name, m.start(2)))
        else:
            tokens.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, K, text):
        self.K = K
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.names = K.variables()
        if not K.exact:
            self.names = dict(self.names, I=K.I)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value=None):
        tok = self.peek()
        if tok is None:
            raise ExpressionError(f"unexpected end of expression in {self.text!r}")
        if value is not None and tok[1] != value:
            raise ExpressionError(f"expected {value!r} at position {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ExpressionError("empty expression")
        value = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            raise ExpressionError(f"unexpected {tok[1]!r} at position {tok[2]} in {self.text!r}")
        return value

    def expr(self):
        K = self.K
        value = self.term()
        while self.peek() and self.peek()[1] in "+-" and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = K.add(value, rhs) if op == "+" else K.sub(value, rhs)
        return value

    def term(self):
        K = self.K
        value = self.unary()
        while self.peek() and self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.unary()
            value = K.mul(value, rhs) if op == "*" else K.div(value, rhs)
        return value

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.unary()
            return self.K.neg(value) if tok[1] == "-" else value
        return self.power()

    def power(self):
        value = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            if self.peek() and self.peek()[1] == "-":
                self.take()
                sign = -1
            num = self.take()
            if num[0] != "num" or not num[1].isdigit():
                raise ExpressionError(f"exponent must be an integer at position {num[2]}")
            value = self.K.pow(value, sign * int(num[1]))
        return value

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            if self.K.exact:
                return self.K.from_fraction(Fraction(text))
            return self.K.ctx.mpc(self.K.ctx.mpf(text))
        if kind == "name":
            if text not in self.names:
                raise ExpressionError(f"unknown name {text!r} at position {pos}")
            return self.names[text]
        if text == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ExpressionError(f"unexpected {text!r} at position {pos}")


def parse_element(K, text):
    return _Parser(K, text).parse()
