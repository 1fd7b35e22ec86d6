import json
import random

import pytest

from cremona import library as lib
from cremona.birmap import DegreeBoundExceeded, compose, equal_up_to_scalar, identity, sigma
from cremona.builtins import UnknownBuiltin, builtin, check_builtin, names
from cremona.certify import (certify_matrix, certify_monomial, certify_tame_elementary,
                             matrix_word, shear_map, verify, verify_nagata)
from cremona.fields import GF, UnsupportedCharacteristic
from cremona.monomial import MonomialMap, random_gl_odd, random_not_odd, transvection
from cremona.obstruction import OBSTRUCTED, gn_obstruction
from cremona.words import SIGMA, GnWord, eval_word


def test_empty_word_is_identity():
    assert eval_word(GnWord(3, [])) == identity(3)
    assert GnWord(3, []).length() == 0


def test_theta_five_letter_word():
    w = lib.theta_word(3)
    assert w.length() == 5 and w.sigma_count() == 2
    assert equal_up_to_scalar(eval_word(w), lib.theta_map(3))


def test_builtin_lookup():
    f, w = builtin("chi1", 4)
    assert w is not None and verify(w, f)
    f, w = builtin("xi", 3)
    assert w is None
    with pytest.raises(UnknownBuiltin):
        builtin("nope", 3)
    with pytest.raises(ValueError):
        builtin("dolgachev", 3)
    with pytest.raises(ValueError):
        builtin("sigma", 3, {"k": 2})


@pytest.mark.parametrize("name", names())
def test_builtin_words(name):
    for n in (2, 3, 4, 5):
        try:
            f, w = builtin(name, n, {"k": 2} if name == "psi" else None)
        except ValueError:
            continue
        if w is None:
            continue
        assert check_builtin(name, n, {"k": 2} if name == "psi" else None)
        # the inverse word undoes the map
        assert compose(eval_word(w.inverse()), f) == identity(n)


def test_obstruction_and_word_are_exclusive():
    for name in names():
        try:
            f, w = builtin(name, 3)
        except ValueError:
            continue
        if w is not None:
            assert gn_obstruction(f).verdict != OBSTRUCTED


def test_certify_monomial_examples():
    c = certify_matrix(transvection(4, 1, 0))
    assert c.certified and c.verified
    assert equal_up_to_scalar(eval_word(c.word), lib.xi_map(4))
    c = certify_matrix(transvection(3, 1, 0))
    assert not c.certified and c.obstruction.verdict == OBSTRUCTED
    d = json.loads(json.dumps(c.to_json()))
    assert d["result"] == "obstruction"


def test_certify_dolgachev_and_mu():
    from cremona.monomial import from_projective
    c = certify_monomial(from_projective(lib.dolgachev_map()))
    assert c.certified
    c = certify_monomial(from_projective(lib.mu_map(3)))
    assert c.certified and verify(c.word, lib.mu_map(3))


@pytest.mark.parametrize("seed", range(10))
def test_parity_decides_monomial_maps(seed):
    rng = random.Random(seed)
    A = random_gl_odd(3, rng, 5)
    c = certify_monomial(MonomialMap((2, -1, 3), A))
    assert c.certified
    B = random_not_odd(3, rng, 5)
    assert matrix_word(B) is None
    assert certify_matrix(B).obstruction.verdict == OBSTRUCTED


@pytest.mark.parametrize("n,v,c", [(3, (2, 0), 1), (3, (1, 1), 2), (3, (3, 1), -1),
                                   (3, (0, 3), 1), (4, (1, 2, 1), 3), (2, (3,), 5),
                                   (3, (1, 0), 0)])
def test_tame_shears(n, v, c):
    w = certify_tame_elementary(n, v, c)
    assert verify(w, shear_map(n, v, c))
    if c == 0:
        assert w.length() == 0


def test_tame_shear_arguments():
    with pytest.raises(ValueError):
        certify_tame_elementary(3, (1,))
    with pytest.raises(ValueError):
        certify_tame_elementary(3, (-1, 0))
    with pytest.raises(UnsupportedCharacteristic):
        certify_tame_elementary(3, (1, 1), 1, GF(2))


def test_nagata():
    r = verify_nagata()
    assert r == {"identity": True, "word": True, "inverse": True, "pieces": True, "ok": True}


def test_char_two_refused():
    with pytest.raises(UnsupportedCharacteristic):
        certify_monomial(MonomialMap((1, 1, 1), transvection(3, 0, 1), GF(2)))
    with pytest.raises(UnsupportedCharacteristic):
        eval_word(lib.theta_word(3), GF(2))


def test_degree_guardrail():
    w = GnWord(3, [SIGMA, lib.tau_word(3), SIGMA])
    with pytest.raises(DegreeBoundExceeded):
        eval_word(w, max_degree=2)


def test_word_json_round_trip():
    w = lib.chi1_word(3)
    again = GnWord.from_json(json.dumps(w.to_json()))
    assert equal_up_to_scalar(eval_word(again), eval_word(w))
    assert again.to_json() == w.to_json()
    with pytest.raises(ValueError):
        GnWord.from_json({"n": 3, "letters": [{"bogus": 1}]})


def test_sigma_word_matches_sigma():
    assert eval_word(GnWord(4, [SIGMA])) == sigma(4)
