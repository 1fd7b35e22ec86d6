import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona import library as lib
from cremona.birmap import compose, equal_up_to_scalar, sigma
from cremona.monomial import (GlWord, MonomialMap, NotOdd, NotUnimodular, check_unimodular,
                              eye, f2_orbit_index, from_projective, gl_full_decompose,
                              gl_odd_decompose, is_gl_odd, is_monomial_map, mat_det, mat_inv,
                              mat_mul, monomial_compose, monomial_inverse, random_gl_odd,
                              random_unimodular, to_projective, transvection)


def _f2_brute(n):
    """Orbit of the all-ones row vector under every invertible matrix over F2."""
    ones = (1,) * n
    orbit = set()
    for bits in itertools.product((0, 1), repeat=n * n):
        M = [bits[i * n:(i + 1) * n] for i in range(n)]
        if _det2(M) == 0:
            continue
        orbit.add(tuple(sum(ones[i] * M[i][j] for i in range(n)) % 2 for j in range(n)))
    return len(orbit)


def _det2(M):
    n = len(M)
    return sum((-1) ** sum(1 for i in range(n) for j in range(i) if p[j] > p[i])
               * all(M[i][p[i]] for i in range(n))
               for p in itertools.permutations(range(n))) % 2


@pytest.mark.parametrize("n", [2, 3])
def test_orbit_index_matches_brute_force(n):
    assert f2_orbit_index(n) == _f2_brute(n)


def test_orbit_index_values():
    assert [f2_orbit_index(n) for n in (2, 3, 5)] == [3, 7, 31]
    with pytest.raises(ValueError):
        f2_orbit_index(1)


def test_unimodular_checks():
    with pytest.raises(NotUnimodular):
        check_unimodular([[2, 0], [0, 1]])
    with pytest.raises(NotUnimodular):
        check_unimodular([[1, 0, 0], [0, 1, 0]])
    A = random_unimodular(4, random.Random(1), 8)
    assert mat_mul(A, mat_inv(A)) == eye(4)
    assert abs(mat_det(A)) == 1


def test_gl_odd_membership():
    assert is_gl_odd(eye(3))
    assert not is_gl_odd(transvection(3, 1, 0))
    assert is_gl_odd([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    with pytest.raises(NotOdd):
        gl_odd_decompose(transvection(3, 1, 0))


def test_gl_odd_is_a_subgroup():
    rng = random.Random(4)
    for _ in range(30):
        A, B = random_gl_odd(3, rng), random_gl_odd(3, rng)
        assert is_gl_odd(mat_mul(A, B)) and is_gl_odd(mat_inv(A))


def test_small_decompositions():
    w = gl_full_decompose([[1, 1], [0, 1]])
    assert len(w) == 1 and w.letters[0].kind == "transvection"
    w = gl_full_decompose([[-1, 0], [0, 1]])
    assert len(w) == 1 and w.letters[0].kind == "theta"
    assert len(gl_full_decompose(eye(3))) == 0


@pytest.mark.parametrize("seed", range(30))
def test_decompositions_evaluate(seed):
    rng = random.Random(seed)
    n = rng.choice((3, 4, 5))
    A = random_gl_odd(n, rng, 8)
    assert gl_odd_decompose(A).evaluate() == A
    B = random_unimodular(n, rng, 8)
    assert gl_full_decompose(B).evaluate() == B


def test_word_json_round_trip():
    A = random_gl_odd(4, random.Random(9), 6)
    w = gl_odd_decompose(A)
    again = GlWord.from_json(json.loads(json.dumps(w.to_json())))
    assert again.evaluate() == A and again.target == w.target
    assert mat_mul(w.evaluate(), w.inverse().evaluate()) == eye(4)


def test_special_matrices():
    n = 3
    minus = tuple(tuple(-int(i == j) for j in range(n)) for i in range(n))
    assert equal_up_to_scalar(to_projective(MonomialMap.from_matrix(minus)), sigma(n))
    assert equal_up_to_scalar(to_projective(MonomialMap.from_matrix(transvection(n, 1, 0))),
                              lib.xi_map(n))
    dolg = lib.dolgachev_map()
    assert is_monomial_map(dolg) and dolg.degree == 2
    m = from_projective(dolg)
    assert to_projective(m) == dolg and is_gl_odd(m.matrix)


@st.composite
def monomial_maps(draw, n=3):
    seed = draw(st.integers(0, 10 ** 6))
    A = random_unimodular(n, random.Random(seed), 5)
    cs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4)
                       .filter(bool), min_size=n, max_size=n))
    return MonomialMap(tuple(cs), A)


@settings(max_examples=50, deadline=None)
@given(monomial_maps())
def test_projective_round_trip(m):
    assert from_projective(to_projective(m)) == m


@settings(max_examples=50, deadline=None)
@given(monomial_maps(), monomial_maps())
def test_composition_agrees_with_symbolic(a, b):
    ab = monomial_compose(a, b)
    assert to_projective(ab) == compose(to_projective(a), to_projective(b))
    inv = monomial_inverse(a)
    assert monomial_compose(a, inv) == MonomialMap.from_matrix(eye(3))


def test_monomial_json():
    m = MonomialMap((Fraction(1, 2), 3, -1), transvection(3, 0, 2))
    d = json.loads(json.dumps(m.to_json()))
    assert d == {"n": 3, "coeffs": ["1/2", "3", "-1"],
                 "matrix": [[1, 0, 1], [0, 1, 0], [0, 0, 1]]}


def test_not_monomial():
    assert not is_monomial_map(lib.tau_map(3))
    with pytest.raises(ValueError):
        from_projective(lib.tau_map(3))
