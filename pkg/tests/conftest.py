from fractions import Fraction

import pytest
import sympy

from cremona.fields import QQ
from cremona.poly import Poly

ACCEPTANCE_LINES = []


def sym_vars(n):
    return sympy.symbols(f"x0:{n}")


def to_sympy(p: Poly):
    xs = sym_vars(p.nvars)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else c
        for x, k in zip(xs, e):
            term = term * x ** k
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, nvars, field=QQ) -> Poly:
    xs = sym_vars(nvars)
    sp = sympy.Poly(sympy.expand(expr), *xs)
    terms = {}
    for mon, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(mon)] = field(Fraction(int(c.p), int(c.q)))
    return Poly(nvars, terms, field)


@pytest.fixture
def sym():
    return sym_vars


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
