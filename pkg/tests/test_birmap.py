import random
from fractions import Fraction

import pytest
import sympy

from cremona import library as lib
from cremona.birmap import (AffMap, DegreeBoundExceeded, MapError, RatFunc, affine_jacobian,
                            compose, compose_with_cofactor, equal_up_to_coordinate_permutation,
                            equal_up_to_scalar, from_affine, identity, is_linear, jacobian,
                            linear_embed, linear_inverse, linear_map, parse_map, sigma, to_affine)
from cremona.fields import GF, QQ
from cremona.monomial import MonomialMap, random_unimodular, to_projective
from cremona.parse import parse_poly
from cremona.poly import Poly, divide_exact

from conftest import sym_vars, to_sympy


def M(s, field=QQ):
    return parse_map(s, field)


def test_common_factor_cancelled():
    assert M("[x0*x1*x2*x0 : x0*x1*x2*x1 : x0*x1*x2*x2]") == identity(2)
    assert M("[x1*x2 : x0*x2 : x0*x1]") == sigma(2)


@pytest.mark.parametrize("bad", ["[x0 : x1^2]", "[0 : 0]", "[x0 + x1^2 : x1^2]"])
def test_invalid_maps(bad):
    with pytest.raises(MapError):
        M(bad)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sigma_involution(n):
    assert compose(sigma(n), sigma(n)) == identity(n)


def test_theta_from_alpha_sigma():
    a1 = linear_map([[1, 0, 0], [1, -1, 0], [0, 0, 1]])
    s = sigma(2)
    w = compose(a1, compose(s, compose(a1, compose(s, a1))))
    assert equal_up_to_scalar(w, M("[x0*x1 : x0^2 : x2*x1]"))


def test_degree_asymmetric_pair():
    a = lib.asym_alpha_map(3)
    g = compose(sigma(3), compose(a, sigma(3)))
    ginv = compose(sigma(3), compose(linear_inverse(a), sigma(3)))
    assert g.degree == 4 and ginv.degree == 3
    shown = lib.frac_map(3, ["x0", ("x0*x1", "x0 + x1"),
                             ("x0*x1*x2", "x0*x1 + x0*x2 + x1*x2")])
    assert equal_up_to_scalar(g, shown)
    assert compose(g, ginv) == identity(3)
    assert sigma(3).degree == 3 and identity(3).degree == 1


def test_cofactor_reported():
    fg, h, _ = compose_with_cofactor(sigma(2), sigma(2))
    assert fg == identity(2)
    assert h.normalize() == parse_poly("x0*x1*x2", 3)


def test_degree_bound():
    with pytest.raises(DegreeBoundExceeded):
        compose(sigma(3), lib.theta_map(3), max_degree=2)


def test_jacobians_from_formulas():
    assert jacobian(sigma(2)) == parse_poly("2*x0*x1*x2", 3)
    for n in (2, 3, 4):
        want = Poly.monomial((2, n - 1) + (0,) * (n - 1), -2)
        assert jacobian(lib.theta_map(n)) == want
    assert jacobian(identity(3)) == 1
    n = 3
    f = lib.square_factor_map(n, "x1", "x2*x3")
    assert jacobian(f) == parse_poly("-2*x2*x3*x0^2", 4)


@pytest.mark.parametrize("seed", range(10))
def test_jacobian_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    A = random_unimodular(n, rng, 4)
    f = to_projective(MonomialMap(tuple(Fraction(rng.randint(1, 4)) for _ in range(n)), A))
    xs = sym_vars(n + 1)
    J = sympy.Matrix([[sympy.diff(to_sympy(c), x) for x in xs] for c in f.components]).det()
    assert sympy.expand(J - to_sympy(jacobian(f))) == 0


def test_chain_rule_with_cancellation():
    # Jac(fg) = ((d1 d2 - m)/(d1 d2)) g*(Jac f) Jac g / h^(n+1)
    f, g = lib.theta_map(3), lib.tau_map(3)
    fg, h, _ = compose_with_cofactor(f, g)
    d1d2 = f.degree * g.degree
    m = h.total_degree()
    pulled = jacobian(f).subs(list(g.components))
    lhs = jacobian(fg) * h ** 4 * Poly.const(d1d2, 4)
    rhs = pulled * jacobian(g) * Poly.const(d1d2 - m, 4)
    assert equal_up_to_scalar_poly(lhs, rhs)


def equal_up_to_scalar_poly(a, b):
    return a.normalize() == b.normalize()


def test_composition_degree_bound():
    rng = random.Random(5)
    maps = [sigma(3), lib.theta_map(3), lib.tau_map(3), lib.chi1_map(3), lib.xi_map(3)]
    for _ in range(30):
        f, g = rng.choice(maps), rng.choice(maps)
        assert compose(f, g).degree <= f.degree * g.degree


def test_inverse_pairs():
    for n in (2, 3, 4):
        assert compose(lib.theta_map(n), lib.theta_map(n)) == identity(n)
    xi = lib.xi_map(3)
    xi_inv = lib.frac_map(3, ["x0", "x1", ("x2*x0", "x1")])
    assert compose(xi, xi_inv) == identity(3)


def test_equality_helpers():
    f = lib.theta_map(3)
    g = type(f)([c.scale(5) for c in f.components])
    assert equal_up_to_scalar(f, g)
    assert not equal_up_to_scalar(sigma(2), identity(2))
    perm = equal_up_to_coordinate_permutation(lib.phi_map(3, 1), lib.theta_map(3))
    assert perm is not None
    assert is_linear(linear_map([[1, 2], [0, 1]])) and not is_linear(sigma(2))


def test_commutator_is_tau_up_to_linear_maps():
    L1, L2 = lib.tau_corrections(3)
    from cremona.words import GnWord, eval_word
    c = lib.commutator_map(3)
    tau_inv = lib.frac_map(3, ["x0", ("x1*x0 - x2*x3", "x0")])
    left = compose(tau_inv, compose(eval_word(GnWord(3, [L1.inverse()])), c))
    assert is_linear(compose(left, eval_word(GnWord(3, [L2.inverse()]))))


def test_affine_chart():
    g = to_affine(sigma(3))
    assert str(g) == "((1)/(x1), (1)/(x2), (1)/(x3))"
    assert to_affine(lib.xi_map(3)) == AffMap([RatFunc(parse_poly(s, 4)) for s in
                                                ("x1", "x1*x2", "x3")])
    assert from_affine(to_affine(lib.tau_map(3))) == lib.tau_map(3)


@pytest.mark.parametrize("field", [QQ, GF(2), GF(3)])
@pytest.mark.parametrize("n", [2, 3])
def test_affine_jacobian_sigma(field, n):
    got = affine_jacobian(to_affine(sigma(n, field)))
    want = RatFunc(Poly.const((-1) ** n, n + 1, field), Poly.monomial((0,) + (2,) * n, 1, field))
    assert got == want


def test_affine_jacobian_simple():
    assert affine_jacobian(to_affine(identity(3))) == RatFunc(Poly.one(4))
    shear = lib.affine_map(2, ["x1 + x2^2"])
    assert affine_jacobian(to_affine(shear)) == RatFunc(Poly.one(3))


def test_linear_embedding():
    for n in (2, 3):
        f = compose(linear_embed(sigma(n)), sigma(n + 1))
        assert equal_up_to_coordinate_permutation(f, lib.theta_map(n + 1)) is not None
    assert linear_embed(identity(2)) == identity(3)
    nu = linear_embed(M("[x1 : x0 : x2]"))
    assert equal_up_to_scalar(nu, lib.frac_map(3, ["x1", "x0", "x2", ("x3*x1", "x0")]))


def test_linear_embedding_is_multiplicative():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.choice((2, 3))
        f = to_projective(MonomialMap.from_matrix(random_unimodular(n, rng, 3)))
        g = to_projective(MonomialMap.from_matrix(random_unimodular(n, rng, 3)))
        assert linear_embed(compose(f, g)) == compose(linear_embed(f), linear_embed(g))


def test_cofactor_divides_formal_composition():
    f, g = lib.chi0_map(3), lib.tau_map(3)
    fg, h, s = compose_with_cofactor(f, g)
    formal = [c.subs(list(g.components)) for c in f.components]
    for raw, red in zip(formal, fg.components):
        assert divide_exact(raw, h).normalize() == red.normalize() or raw.is_zero()
