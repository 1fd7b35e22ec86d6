"""Text grammar for polynomials, maps and integer matrices.

Polynomials are read by a small recursive-descent parser.  It accepts the
emitted grammar (``poly := term (('+'|'-') term)*``, with terms such as
``-3/2*x0^2*x1``) and, as a convenience, parentheses, juxtaposition and
integer powers of parenthesized sub-expressions.  Output always uses the
strict grammar in graded-lex descending order.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .fields import QQ, Field
from .poly import Poly


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|([-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at {pos} in {text!r}")
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("var", int(m.group(3))))
        else:
            out.append(("op", m.group(4)))
        pos = m.end()
    return out


class _PolyParser:
    def __init__(self, text, nvars, field):
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars
        self.field = field
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.factor()
            elif (kind, val) == ("op", "/"):
                self.take()
                den = self.factor()
                if not den.is_constant() or den.is_zero():
                    raise ParseError("division only by nonzero constants")
                acc = acc.scale(self.field.inv(den.constant_value()))
            elif kind in ("int", "var") or (kind, val) == ("op", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be a natural number")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return Poly.const(val, self.nvars, self.field)
        if kind == "var":
            if val >= self.nvars:
                raise ParseError(f"x{val} out of range for {self.nvars} variables")
            return Poly.var(val, self.nvars, self.field)
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect(")")
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def max_var_index(text: str) -> int:
    idx = [int(m) for m in re.findall(r"x(\d+)", text)]
    return max(idx, default=-1)


def parse_poly(text: str, nvars: int | None = None, field: Field = QQ) -> Poly:
    """Parse a polynomial; ``nvars`` defaults to one more than the largest index."""
    if nvars is None:
        nvars = max_var_index(text) + 1
    return _PolyParser(text, nvars, field).parse()


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        neg = c < 0 if not p.field.p else False
        a = -c if neg else c
        mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# maps and matrices


def split_map_text(text: str) -> list[str]:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError(f"map must be written as [f0:...:fn], got {text!r}")
    parts = [s.strip() for s in t[1:-1].split(":")]
    if len(parts) < 2 or any(not s for s in parts):
        raise ParseError(f"map needs at least two nonempty components: {text!r}")
    return parts


def parse_components(text: str, field: Field = QQ) -> list[Poly]:
    """Parse ``[f0:...:fn]`` (or the JSON form) into n+1 polys in n+1 variables."""
    t = text.strip()
    if t.startswith("{"):
        try:
            obj = json.loads(t)
            comps = obj["components"]
            n = int(obj["n"])
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad map JSON: {exc}") from None
        if len(comps) != n + 1:
            raise ParseError("JSON map: len(components) != n+1")
    else:
        comps = split_map_text(t)
    nv = len(comps)
    return [parse_poly(c, nv, field) for c in comps]


def format_components(polys) -> str:
    return "[" + " : ".join(format_poly(p) for p in polys) + "]"


def parse_matrix(text: str) -> list[list[int]]:
    try:
        m = json.loads(text)
    except ValueError as exc:
        raise ParseError(f"bad matrix JSON: {exc}") from None
    if (not isinstance(m, list) or not m
            or any(not isinstance(r, list) or len(r) != len(m) for r in m)
            or any(not isinstance(x, int) or isinstance(x, bool) for r in m for x in r)):
        raise ParseError("matrix must be a square JSON array of integer arrays")
    return m
