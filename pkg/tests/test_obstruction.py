import json
import random

import pytest

from cremona import library as lib
from cremona.birmap import compose, jacobian, linear_map, sigma
from cremona.fields import GF, UnsupportedCharacteristic
from cremona.monomial import MonomialMap, random_gl_odd, random_not_odd, to_projective
from cremona.obstruction import (INAPPLICABLE, NO_OBSTRUCTION, OBSTRUCTED, contracted_report,
                                 discrepancy, gn_obstruction, kth_power_test)
from cremona.parse import parse_poly
from cremona.poly import Poly


def P(s, n=4):
    return parse_poly(s, n)


def test_kth_power_examples():
    ok, h, _ = kth_power_test(P("4*x0^2*x1^2"), 2)
    assert ok and h == P("x0*x1")
    ok, h, _ = kth_power_test(P("x0^2*x1"), 2)
    assert not ok and h is None
    ok, h, _ = kth_power_test(P("-3*(x0 + x1)^6*x2^3"), 3)
    assert ok and h == P("(x0 + x1)^2*x2")
    with pytest.raises(ValueError):
        kth_power_test(P("x0"), 1)
    with pytest.raises(ValueError):
        kth_power_test(Poly.zero(4), 2)


def test_quadratic_involution_is_obstructed():
    f = lib.quad_involution_map(3)
    assert jacobian(f) == P("-2*x0^2*x1*x2")
    rep = gn_obstruction(f)
    assert rep.verdict == OBSTRUCTED
    assert rep.witness[1] == 1
    assert rep.witness[0] in (P("x1*x2"), P("x1"), P("x2"))


def test_verdicts():
    assert gn_obstruction(lib.xi_map(3)).verdict == OBSTRUCTED
    assert gn_obstruction(sigma(3)).verdict == NO_OBSTRUCTION
    assert gn_obstruction(lib.theta_map(3)).verdict == NO_OBSTRUCTION
    even = gn_obstruction(lib.xi_map(4))
    assert even.verdict == INAPPLICABLE and even.reason == "even dimension"
    assert gn_obstruction(sigma(3, GF(3))).verdict == INAPPLICABLE


def test_report_json():
    d = json.loads(json.dumps(gn_obstruction(lib.xi_map(3)).to_json()))
    assert d["verdict"] == OBSTRUCTED
    assert {"witnessFactor", "witnessMultiplicity", "jacobian", "unit", "factors"} <= set(d)
    assert d["witnessMultiplicity"] % 2 == 1
    d = gn_obstruction(sigma(3)).to_json()
    assert "witnessFactor" not in d and d["verdict"] == NO_OBSTRUCTION


def test_discrepancy():
    assert discrepancy(sigma(3), P("x0")) == 2
    assert discrepancy(lib.xi_map(3), P("x0")) == 3
    assert discrepancy(lib.xi_map(3), P("x1")) == 1
    assert discrepancy(sigma(3), P("x0 + x1")) == 0
    with pytest.raises(ValueError):
        discrepancy(sigma(3), P("x0 + 1"))
    with pytest.raises(ValueError):
        discrepancy(sigma(3), Poly.one(4))
    with pytest.raises(UnsupportedCharacteristic):
        discrepancy(sigma(3, GF(5)), parse_poly("x0", 4, GF(5)))


def test_contracted_locus_of_theta():
    dec = contracted_report(lib.theta_map(3))
    assert dec.expand() == jacobian(lib.theta_map(3))
    assert discrepancy(lib.theta_map(3), P("x0")) == 2
    assert discrepancy(lib.theta_map(3), P("x1")) == 2
    assert dec.multiplicities() == [2]


def test_asymmetric_pair_product():
    # the contracted loci of g and its inverse pair up
    g, gi = lib.asym_g_map(3), lib.asym_ginv_map(3)
    a = contracted_report(g)
    b = contracted_report(gi)
    assert sum(m * a_.total_degree() for a_, m in a.factors) == 4 * (4 - 1)
    assert sum(m * b_.total_degree() for b_, m in b.factors) == 4 * (3 - 1)


def test_discrepancy_matches_contracted_entries():
    for f in (sigma(3), lib.theta_map(3), lib.xi_map(3), lib.asym_g_map(3)):
        for a, m in contracted_report(f).factors:
            # each squarefree factor splits further; every piece has multiplicity m
            assert discrepancy(f, a) == m


@pytest.mark.parametrize("seed", range(12))
def test_soundness_on_monomial_maps(seed):
    # an obstruction never fires on a map known to be a word in the generators
    rng = random.Random(seed)
    A = random_gl_odd(3, rng, 4)
    assert gn_obstruction(to_projective(MonomialMap.from_matrix(A))).verdict == NO_OBSTRUCTION
    B = random_not_odd(3, rng, 4)
    assert gn_obstruction(to_projective(MonomialMap.from_matrix(B))).verdict == OBSTRUCTED


def test_square_class_closed_under_composition():
    # maps whose Jacobian is a scalar times a square are closed under composition
    rng = random.Random(2)
    pool = [sigma(3), lib.theta_map(3), lib.tau_map(3), lib.chi1_map(3),
            linear_map([[1, 0, 0, 0], [1, 1, 0, 0], [0, 2, 1, 0], [0, 0, 1, 1]])]
    for _ in range(20):
        f, g = rng.choice(pool), rng.choice(pool)
        ok, _, _ = kth_power_test(jacobian(compose(f, g)), 2)
        assert ok
