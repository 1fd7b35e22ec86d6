import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.fields import GF, QQ, FieldError, parse_field
from cremona.parse import (ParseError, format_components, format_poly, parse_components,
                           parse_matrix, parse_poly)
from cremona.poly import Poly


def test_emitted_grammar():
    p = parse_poly("-3/2*x0^2*x1 + x2 - 7", 3)
    assert format_poly(p) == "-3/2*x0^2*x1 + x2 - 7"


def test_parentheses_and_powers():
    assert parse_poly("(x0 + x1)^2", 2) == parse_poly("x0^2 + 2*x0*x1 + x1^2", 2)
    assert parse_poly("x0 x1", 2) == parse_poly("x0*x1", 2)
    assert parse_poly("-(x0 - x1)", 2) == parse_poly("x1 - x0", 2)


def test_nvars_default():
    assert parse_poly("x3").nvars == 4


@pytest.mark.parametrize("bad", ["x0 +", "x0 ** 2", "y1", "(x0", "x0^x1", "1/0"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_poly(bad, 2)


def test_map_text_and_json():
    comps = parse_components("[x1*x2 : x0*x2 : x0*x1]")
    assert format_components(comps) == "[x1*x2 : x0*x2 : x0*x1]"
    again = parse_components('{"n": 2, "components": ["x1*x2", "x0*x2", "x0*x1"]}')
    assert again == comps
    with pytest.raises(ParseError):
        parse_components("x0 : x1")
    with pytest.raises(ParseError):
        parse_components('{"n": 3, "components": ["x0", "x1"]}')


def test_matrices():
    assert parse_matrix("[[1,0],[1,1]]") == [[1, 0], [1, 1]]
    for bad in ("[[1,0],[1]]", "[[1.5]]", "[]", "nope", "[[true]]"):
        with pytest.raises(ParseError):
            parse_matrix(bad)


def test_fields():
    assert parse_field("rationals") == QQ
    assert parse_field("fp:3") == GF(3)
    assert parse_field("gf(5)") == GF(5)
    with pytest.raises(FieldError):
        parse_field("fp:4")
    with pytest.raises(FieldError):
        parse_field("reals")


def test_finite_field_format():
    p = parse_poly("x0 - x1", 2, GF(5))
    assert parse_poly(format_poly(p), 2, GF(5)) == p


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
        st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(bool),
        max_size=6))
    return Poly(3, terms)


@settings(max_examples=100, deadline=None)
@given(polys())
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), 3) == p
