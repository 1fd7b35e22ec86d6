"""Closed forms and generator words for the named maps.

Every word here is built from sigma_n, linear letters and previously built
words; :func:`cremona.builtins.validate_table` checks each word against its
closed form.  Coefficients stay in Z[1/2].
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .birmap import AffMap, ProjMap, RatFunc, from_affine
from .fields import QQ, Field
from .parse import parse_poly
from .poly import divide_exact, gcd
from .words import SIGMA, GnWord, conj_perm, elementary_lin, perm_lin


# ---------------------------------------------------------------------------
# closed forms


def frac_map(n: int, comps, field: Field = QQ) -> ProjMap:
    """Projective map from leading components given as (num, den) strings.

    Components past the given ones are x_k.  Each entry is ``"num"`` or
    ``("num", "den")``; all fractions must have a common degree.
    """
    nv = n + 1
    parsed = []
    for c in comps:
        num, den = (c, "1") if isinstance(c, str) else c
        parsed.append((parse_poly(num, nv, field), parse_poly(den, nv, field)))
    for k in range(len(comps), nv):
        parsed.append((parse_poly(f"x{k}", nv, field), parse_poly("1", nv, field)))
    L = parsed[0][1]
    for _, d in parsed[1:]:
        L = divide_exact(L * d, gcd(L, d))
    return ProjMap([divide_exact(L, d) * p for p, d in parsed])


def affine_map(n: int, comps, field: Field = QQ) -> ProjMap:
    """Projective map from affine coordinates (num, den) in x1..xn."""
    nv = n + 1
    fr = []
    for c in comps:
        num, den = (c, "1") if isinstance(c, str) else c
        fr.append(RatFunc(parse_poly(num, nv, field), parse_poly(den, nv, field)))
    for k in range(len(comps) + 1, nv):
        fr.append(RatFunc(parse_poly(f"x{k}", nv, field)))
    return from_affine(AffMap(fr))


def _swap(n, pairs) -> list:
    """Relabelling permutation of 0..n from a dict of forced values."""
    p = list(range(n + 1))
    for a, b in pairs.items():
        p[a] = b
    assert sorted(p) == list(range(n + 1)), pairs
    return p


# ---------------------------------------------------------------------------
# small linear letters


def alpha1(n):
    return elementary_lin(n, {(1, 0): 1, (1, 1): -1})


def alpha2(n):
    return elementary_lin(n, {(2, 1): 1, (2, 2): -1})


def neg(n, k):
    """x_k -> -x_k."""
    return elementary_lin(n, {(k, k): -1})


def shift(n, i, j, c=1):
    """x_i -> x_i + c x_j."""
    return elementary_lin(n, {(i, j): c})


# ---------------------------------------------------------------------------
# words


@lru_cache(maxsize=None)
def theta_word(n: int) -> GnWord:
    a = alpha1(n)
    return GnWord(n, [a, SIGMA, a, SIGMA, a], "theta")


@lru_cache(maxsize=None)
def theta_alpha2_word(n: int) -> GnWord:
    """[x0 : x1 : x0^2/x1 - x2 : ...]."""
    t = theta_word(n)
    return GnWord(n, [t, alpha2(n), t], "theta.alpha2.theta")


@lru_cache(maxsize=None)
def tau_prime_word(n: int) -> GnWord:
    """[x0 : x1 + x2^2/x0 : x2 : ...]."""
    c = conj_perm(theta_alpha2_word(n), _swap(n, {0: 2, 1: 0, 2: 1}))
    return GnWord(n, [c, neg(n, 1)], "tau'")


def commutator_alpha(n):
    """x2 -> x2 + x3."""
    return shift(n, 2, 3)


@lru_cache(maxsize=None)
def commutator_word(n: int) -> GnWord:
    """(tau')^-1 alpha^-1 tau' alpha = [x0 : x1 + x3(2x2 + x3)/x0 : x2 : ...]."""
    t = tau_prime_word(n)
    a = commutator_alpha(n)
    return GnWord(n, [t.inverse(), a.inverse(), t, a], "commutator")


def tau_corrections(n):
    """Linear L1, L2 with commutator = L1 o tau o L2."""
    L2 = elementary_lin(n, {(2, 2): 2, (2, 3): 1})
    L1 = elementary_lin(n, {(2, 2): Fraction(1, 2), (2, 3): Fraction(-1, 2)})
    return L1, L2


@lru_cache(maxsize=None)
def tau_word(n: int) -> GnWord:
    """[x0 : x1 + x2 x3/x0 : x2 : ...], n >= 3."""
    L1, L2 = tau_corrections(n)
    return GnWord(n, [L1.inverse(), commutator_word(n), L2.inverse()], "tau")


@lru_cache(maxsize=None)
def tau1_word(n: int) -> GnWord:
    """[x0 : -x1 + x0 x2/x3 : x2 : ...]."""
    c = conj_perm(tau_word(n), _swap(n, {0: 3, 2: 0, 3: 2}))
    return GnWord(n, [c, neg(n, 1)], "tau1")


@lru_cache(maxsize=None)
def tau2_word(n: int) -> GnWord:
    """[x0 : x1 : -x2 + x1 x3/x0 : ...]."""
    c = conj_perm(tau_word(n), _swap(n, {1: 2, 2: 1}))
    return GnWord(n, [c, neg(n, 2)], "tau2")


def chi_alpha(n):
    """x2 -> x3 - x2."""
    return elementary_lin(n, {(2, 2): -1, (2, 3): 1})


@lru_cache(maxsize=None)
def chi0_word(n: int) -> GnWord:
    # the extra shift x2 -> x2 + x3 after tau2 is what reproduces the
    # closed form of chi0 below
    t2 = GnWord(n, [shift(n, 2, 3), tau2_word(n)])
    return GnWord(n, [SIGMA, chi_alpha(n), SIGMA, t2, SIGMA, tau1_word(n), theta_word(n)],
                  "chi0")


@lru_cache(maxsize=None)
def tau_chi1_word(n: int) -> GnWord:
    """[x0 : x1 + x0 x3/x2 : x2 : ...]."""
    return GnWord(n, [conj_perm(tau_word(n), _swap(n, {0: 2, 2: 0}))], "tau(chi1)")


@lru_cache(maxsize=None)
def chi1_word(n: int) -> GnWord:
    t = tau_chi1_word(n)
    return GnWord(n, [SIGMA, t, chi_alpha(n), chi0_word(n), t], "chi1")


@lru_cache(maxsize=None)
def phi_word(n: int, k: int) -> GnWord:
    t = theta_word(n)
    if k == 1:
        return GnWord(n, [conj_perm(t, _swap(n, {0: 1, 1: 2, 2: 0}))], "phi1")
    if k == 2:
        return GnWord(n, [conj_perm(t, _swap(n, {0: 1, 1: 0}))], "phi2")
    if k == 3:
        return GnWord(n, [conj_perm(t, _swap(n, {1: 2, 2: 1}))], "phi3")
    if k == 4:
        return GnWord(n, [conj_perm(t, _swap(n, {0: 3, 3: 0}))], "phi4")
    if k == 5:
        return GnWord(n, [perm_lin(_swap(n, {0: 1, 1: 0}), n), t], "phi5")
    raise ValueError("phi index must be 1..5")


@lru_cache(maxsize=None)
def mu_word(n: int) -> GnWord:
    p = [phi_word(n, k) for k in (1, 2, 3)]
    return GnWord(n, [p[1], p[2], p[1], p[0]], "mu")


@lru_cache(maxsize=None)
def chi_word(n: int) -> GnWord:
    """[x0 : x0 x2/x3 : x0 x3^3/(x1 x2^2) : x3 : ...]."""
    return GnWord(n, [neg(n, 2), chi1_word(n)], "chi")


@lru_cache(maxsize=None)
def nu_word(n: int) -> GnWord:
    """[x0 : x1 : x2 x1/x0 : x3 x1/x0 : x4 : ...], n >= 3."""
    m = GnWord(n, [mu_word(n), chi_word(n), phi_word(n, 4)])
    k = GnWord(n, [perm_lin(_swap(n, {1: 2, 2: 1}), n), m])
    return GnWord(n, [conj_perm(k, _swap(n, {1: 3, 3: 1}))], "nu").inverse()


@lru_cache(maxsize=None)
def psi_word(n: int, k: int) -> GnWord:
    """Multiplies x2 .. x_{2k-1} by x1/x0."""
    if not 3 <= 2 * k - 1 <= n:
        raise ValueError("psi_k needs 3 <= 2k-1 <= n")
    v = nu_word(n)
    parts = [conj_perm(v, _swap(n, {2: a, 3: a + 1, a: 2, a + 1: 3}) if a != 2 else list(range(n + 1)))
             for a in range(2, 2 * k - 1, 2)]
    return GnWord(n, parts, f"psi{k}")


@lru_cache(maxsize=None)
def xi2_word() -> GnWord:
    n = 2
    t = theta_word(n)
    U = GnWord(n, [perm_lin([2, 1, 0], n), conj_perm(t, [0, 2, 1])])
    return GnWord(n, [conj_perm(U, [0, 2, 1])], "xi")


@lru_cache(maxsize=None)
def xi_word(n: int) -> GnWord:
    """[x0 : x1 : x2 x1/x0 : x3 : ...] for even n."""
    if n % 2:
        raise ValueError("xi_n has no word for odd n")
    if n == 2:
        return xi2_word()
    w = GnWord(n, [phi_word(n, 5), psi_word(n, n // 2).inverse()])
    return GnWord(n, [conj_perm(w, _swap(n, {2: n, n: 2}))], "xi")


@lru_cache(maxsize=None)
def transvection_word(n: int) -> GnWord:
    """Word for the monomial map of I + E_{21} (affine indices), any n >= 2."""
    return xi_word(n)


# ---------------------------------------------------------------------------
# closed forms of the named maps


def tail(n, start):
    return [f"x{k}" for k in range(start, n + 1)]


def theta_map(n):
    return frac_map(n, ["x0", ("x0^2", "x1")])


def theta_alpha2_map(n):
    return frac_map(n, ["x0", "x1", ("x0^2 - x1*x2", "x1")])


def tau_prime_map(n):
    return frac_map(n, ["x0", ("x0*x1 + x2^2", "x0")])


def tau_map(n):
    return frac_map(n, ["x0", ("x0*x1 + x2*x3", "x0")])


def commutator_map(n):
    return frac_map(n, ["x0", ("x0*x1 + 2*x2*x3 + x3^2", "x0")])


def tau1_map(n):
    return frac_map(n, ["x0", ("-x1*x3 + x0*x2", "x3")])


def tau2_map(n):
    return frac_map(n, ["x0", "x1", ("-x0*x2 + x1*x3", "x0")])


def chi0_map(n):
    comps = [("1", "x0"), ("x1*x3", "x0*(x1*x2 - x0*x3)"),
             ("x1*x2^2 + x0*x3^2 - x0*x2*x3", "x0*x3^3"), ("1", "x3")]
    comps += [("1", f"x{k}") for k in range(4, n + 1)]
    return frac_map(n, comps)


def tau_chi1_map(n):
    return frac_map(n, ["x0", ("x1*x2 + x0*x3", "x2")])


def chi1_map(n):
    return frac_map(n, ["x0", ("x0*x2", "x3"), ("-x0*x3^3", "x1*x2^2")])


def chi_map(n):
    return frac_map(n, ["x0", ("x0*x2", "x3"), ("x0*x3^3", "x1*x2^2")])


def phi_map(n, k):
    if k == 1:
        return frac_map(n, ["x0", "x1", ("x1^2", "x2")])
    if k == 2:
        return frac_map(n, [("x1^2", "x0")])
    if k == 3:
        return frac_map(n, ["x0", "x1", ("x0^2", "x2")])
    if k == 4:
        return frac_map(n, ["x0", ("x3^2", "x1")])
    if k == 5:
        return frac_map(n, ["x0", "x1"] + [(f"x{i}*x1", "x0") for i in range(2, n + 1)])
    raise ValueError("phi index must be 1..5")


def mu_map(n):
    return frac_map(n, ["x0", "x1", ("x2*x1^2", "x0^2")])


def nu_map(n):
    return frac_map(n, ["x0", "x1", ("x2*x1", "x0"), ("x3*x1", "x0")])


def mu_chi_phi4_map(n):
    return frac_map(n, ["x0", ("x2*x0", "x3"), ("x1*x0", "x3")])


def psi_map(n, k):
    return frac_map(n, ["x0", "x1"] + [(f"x{i}*x1", "x0") for i in range(2, 2 * k)])


def xi_map(n):
    return frac_map(n, ["x0", "x1", ("x2*x1", "x0")])


def phi_block_map(n, m):
    """Multiplies x2 .. x_m by x1/x0."""
    if not n > m >= 2:
        raise ValueError("need n > m >= 2")
    return frac_map(n, ["x0", "x1"] + [(f"x{i}*x1", "x0") for i in range(2, m + 1)])


def asym_alpha_map(n):
    return frac_map(n, ["x0", "x1 + x0", "x2 + x1 + x0"])


def asym_g_map(n):
    return frac_map(n, ["x0", ("x0*x1", "x0 + x1"), ("x0*x1*x2", "x0*x1 + x0*x2 + x1*x2")])


def asym_ginv_map(n):
    return frac_map(n, ["x0", ("x0*x1", "x0 - x1"), ("x1*x2", "x1 - x2")])


def quad_involution_map(n):
    """[x1 x2 : x0 x1 : ... : x0 xn]."""
    return frac_map(n, [("x1*x2", "x0")])


def square_factor_map(n, P1="x1", P2="x2*x3"):
    return frac_map(n, [(f"x0*({P1}) + ({P2})", "x0")])


def dolgachev_map():
    return frac_map(5, ["x1*x2", "x0*x2", "x0*x1", "x0*x3", "x1*x4", "x2*x5"])


def kantor_psi_map():
    return frac_map(3, ["x1", "x0", ("x2*x1^2", "x0^2"), ("x3*x1", "x0")])


def nagata_alpha_map():
    return frac_map(3, ["x0", ("x1*x3 + x2^2", "x3")])


def nagata_beta_map():
    return frac_map(3, ["x0", "x1", ("x0^2*x2 + x1*x3^2", "x0^2")])


def nagata_map():
    q = "(x1*x3 - x2^2)"
    return affine_map(3, [f"x1 + 2*x2*{q} + x3*{q}^2", f"x2 + x3*{q}", "x3"])


def sigma_map(n):
    return frac_map(n, [("1", f"x{k}") for k in range(n + 1)])
