"""Certificates of membership in G_n: verified generator words.

:func:`certify_monomial` decides monomial maps completely (word or parity
obstruction).  :func:`certify_tame_elementary` builds words for elementary
shears ``x1 -> x1 + c x2^v2 ... xn^vn`` of affine space.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .birmap import ProjMap, compose, equal_up_to_scalar
from .fields import QQ, Field, UnsupportedCharacteristic
from .library import (affine_map, mu_word, nagata_alpha_map, nagata_beta_map, nagata_map,
                      nu_word, tau_prime_word, theta_word, transvection_word)
from .monomial import (GlLetter, MonomialMap, eye, gl_full_decompose, gl_odd_decompose,
                       is_gl_odd, mat_mul, perm_with, to_projective)
from .obstruction import OBSTRUCTED, ObstructionReport, gn_obstruction
from .words import GnWord, conj_perm, diag_lin, elementary_lin, eval_word, perm_lin


class CertificationError(RuntimeError):
    """A constructed word failed verification (an internal bug, never expected)."""


@dataclass
class Certificate:
    target: ProjMap
    word: GnWord | None = None
    obstruction: ObstructionReport | None = None
    verified: bool = False

    @property
    def certified(self) -> bool:
        return self.word is not None

    def to_json(self) -> dict:
        d = {"target": str(self.target), "verified": self.verified}
        if self.word is not None:
            d["result"] = "word"
            d["word"] = self.word.to_json()
        else:
            d["result"] = "obstruction"
            d["obstruction"] = self.obstruction.to_json()
        return d


def _check_field(field: Field):
    if field.p == 2:
        raise UnsupportedCharacteristic("certification is not available in characteristic 2")


def verify(word: GnWord, target: ProjMap) -> bool:
    return equal_up_to_scalar(eval_word(word, target.field), target)


# ---------------------------------------------------------------------------
# monomial maps


def _lift_perm(perm) -> list:
    """A relabelling of affine indices 0..n-1 as a relabelling of 0..n."""
    return [0] + [1 + p for p in perm]


@lru_cache(maxsize=None)
def _base_word(kind: str, n: int) -> GnWord:
    if kind == "theta":
        return theta_word(n)
    if kind == "mu":
        return mu_word(n)
    if kind == "nu":
        return nu_word(n)
    if kind == "xi":
        return transvection_word(n)
    raise ValueError(kind)


def _letter_word(L: GlLetter, n: int) -> GnWord:
    """G_n word for the monomial map of one matrix letter."""
    if L.kind == "perm":
        # monomial map x'_{perm[k]} = x_k: component 1+perm[k] is x_{1+k}
        src = [0] * (n + 1)
        for k, p in enumerate(L.perm):
            src[1 + p] = 1 + k
        return GnWord(n, [perm_lin(src, n)])
    if L.kind == "transvection":
        # I + s E_ij is the conjugate of I + E_{10} with 1 -> i, 0 -> j
        conj = perm_with(n, {1: L.i, 0: L.j})
        w = conj_perm(_base_word("xi", n), _lift_perm(conj))
        return w if L.sign == 1 else w.inverse()
    base = _base_word(L.kind, n)
    w = conj_perm(base, _lift_perm(L.perm)) if L.perm else base
    return w if L.exp == 1 else w.inverse()


def matrix_word(A) -> GnWord | None:
    """Word for the coefficient-one monomial map of A, or None when A is not in G_n."""
    n = len(A)
    if n < 2:
        raise ValueError("n must be at least 2")
    if n % 2 and n >= 3:
        if not is_gl_odd(A):
            return None
        gw = gl_odd_decompose(A)
    else:
        gw = gl_full_decompose(A)
    words = [_letter_word(L, n) for L in gw.letters]
    return GnWord(n, [_bracket(words, [L.matrix(n) for L in gw.letters], n)], "monomial")


def monomial_degree(A) -> int:
    """Degree of the projective monomial map with matrix A."""
    rows = [(0,) * (len(A) + 1)] + [(-sum(r),) + tuple(r) for r in A]
    return -sum(min(c) for c in zip(*rows))


def _bracket(words, mats, n) -> GnWord:
    """Nest the letters so that the largest intermediate degree is minimal.

    Evaluation composes each block separately, so the nesting fixes which
    partial products ever get built; a dynamic program over the letter
    matrices picks the split points.
    """
    k = len(words)
    if k == 0:
        return GnWord(n, [])
    deg = {}
    for i in range(k):
        P = eye(n)
        for j in range(i, k):
            P = mat_mul(P, mats[j])
            deg[i, j] = monomial_degree(P)
    cost, split = {}, {}
    for i in range(k):
        cost[i, i] = deg[i, i]
    for span in range(1, k):
        for i in range(k - span):
            j = i + span
            m = min(range(i, j), key=lambda m: max(cost[i, m], cost[m + 1, j]))
            split[i, j] = m
            cost[i, j] = max(deg[i, j], cost[i, m], cost[m + 1, j])

    def build(i, j):
        if i == j:
            return words[i]
        m = split[i, j]
        return GnWord(n, [build(i, m), build(m + 1, j)])

    return build(0, k - 1)


def certify_monomial(m: MonomialMap) -> Certificate:
    _check_field(m.field)
    target = to_projective(m)
    W = matrix_word(m.matrix)
    if W is None:
        rep = gn_obstruction(target)
        if rep.verdict != OBSTRUCTED:
            raise CertificationError("matrix outside GL_odd but no Jacobian obstruction")
        return Certificate(target, obstruction=rep, verified=True)
    if any(c != 1 for c in m.coeffs):
        W = GnWord(m.n, [diag_lin((1,) + tuple(m.coeffs)), W], "monomial")
    if not verify(W, target):
        raise CertificationError("monomial word does not evaluate to the target")
    return Certificate(target, word=W, verified=True)


def certify_matrix(A, field: Field = QQ) -> Certificate:
    return certify_monomial(MonomialMap.from_matrix(A, field))


# ---------------------------------------------------------------------------
# tame elementary shears


def shear_map(n: int, v, c=1, field: Field = QQ) -> ProjMap:
    """Projectivized (x1 + c x2^v2 ... xn^vn, x2, ..., xn)."""
    mono = "*".join(f"x{i}^{e}" for i, e in zip(range(2, n + 1), v) if e) or "1"
    c = Fraction(c)
    return affine_map(n, [f"x1 + ({c.numerator}/{c.denominator})*{mono}"], field)


def _swap_word(w: GnWord, i: int, j: int) -> GnWord:
    if i == j:
        return w
    p = list(range(w.n + 1))
    p[i], p[j] = j, i
    return conj_perm(w, p)


def _shear_even(n: int, v, c) -> GnWord:
    """phi^-1 l phi with phi monomial; needs v[0] even or n even."""
    a = list(v)
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    A[0] = [1] + [-x for x in a]
    A[1] = [0, 1] + a[1:]
    phi = matrix_word(A)
    assert phi is not None
    l = elementary_lin(n, {(1, 0): c})
    return GnWord(n, [phi.inverse(), l, phi])


def _shear(n: int, v: tuple, c) -> GnWord:
    if c == 0:
        return GnWord(n, [])
    if n % 2 == 0 or v[0] % 2 == 0:
        return _shear_even(n, v, c)
    k = next((i for i, e in enumerate(v) if e % 2 == 0), None)
    if k is not None:
        # move the even exponent to x2
        w = list(v)
        w[0], w[k] = w[k], w[0]
        return _swap_word(_shear(n, tuple(w), c), 2, 2 + k)
    k = next((i for i, e in enumerate(v) if e == 1), None)
    if k is not None:
        if k:
            w = list(v)
            w[0], w[k] = w[k], w[0]
            return _swap_word(_shear(n, tuple(w), c), 2, 2 + k)
        # c x2 m = c/2 (x2+1)^2 m - c/2 m - c/2 x2^2 m
        rest = tuple(v[1:])
        h = Fraction(c) / 2
        t = elementary_lin(n, {(2, 0): 1})
        m1 = GnWord(n, [t.inverse(), _shear(n, (2,) + rest, h), t])
        m2 = _shear(n, (0,) + rest, -h)
        m3 = _shear(n, (2,) + rest, -h)
        return GnWord(n, [m1, m2, m3])
    # all exponents odd and >= 3: conjugate by f = (x1 x2^2, x2, ...)
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    A[0][1] = 2
    f = matrix_word(A)
    inner = _shear(n, (v[0] - 2,) + tuple(v[1:]), c)
    return GnWord(n, [f, inner, f.inverse()])


def certify_tame_elementary(n: int, v, c=1, field: Field = QQ) -> GnWord:
    """Verified word for (x1 + c x2^v2 ... xn^vn, x2, ..., xn)."""
    _check_field(field)
    v = tuple(int(e) for e in v)
    if n < 2 or len(v) != n - 1:
        raise ValueError("need n >= 2 and n-1 exponents")
    if any(e < 0 for e in v):
        raise ValueError("exponents must be nonnegative")
    c = Fraction(c)
    W = _shear(n, v, c)
    W = GnWord(n, W.letters, "shear")
    if not verify(W, shear_map(n, v, c, field)):
        raise CertificationError("shear word does not evaluate to the target")
    return W


# ---------------------------------------------------------------------------
# Nagata


def nagata_alpha_word() -> GnWord:
    """[w : x + y^2/z : y : z], the tau' word with x0 and x3 exchanged."""
    return GnWord(3, [conj_perm(tau_prime_word(3), [3, 1, 2, 0])], "nagata alpha")


def nagata_beta_word() -> GnWord:
    """[w : x : y + x z^2/w^2 : z] via the shear x1 += x2 x3^2 with x1, x2 exchanged."""
    return GnWord(3, [_swap_word(certify_tame_elementary(3, (1, 2)), 1, 2)], "nagata beta")


def nagata_word() -> GnWord:
    # alpha^-1 acts first
    a = nagata_alpha_word()
    return GnWord(3, [a, nagata_beta_word(), a.inverse()], "nagata")


def verify_nagata() -> dict:
    """Check N = alpha^-1 beta alpha (alpha^-1 acting first) symbolically and via the word."""
    a, b, N = nagata_alpha_map(), nagata_beta_map(), nagata_map()
    # the inverse of alpha is alpha with the sign of y^2/z flipped
    a_inv = compose(compose(_neg1(), a), _neg1())
    direct = equal_up_to_scalar(compose(compose(a, b), a_inv), N)
    W = nagata_word()
    word_ok = verify(W, N)
    inv_ok = equal_up_to_scalar(compose(eval_word(W), eval_word(W.inverse())),
                                compose(_neg1(), _neg1()))
    pieces = verify(nagata_alpha_word(), a) and verify(nagata_beta_word(), b)
    return {"identity": direct, "word": word_ok, "inverse": inv_ok, "pieces": pieces,
            "ok": direct and word_ok and inv_ok and pieces}


def _neg1():
    from .birmap import linear_map
    return linear_map([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
