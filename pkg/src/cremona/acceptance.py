"""The acceptance suite: twelve end-to-end checks run by ``cremona selftest``.

Every check is a function returning ``(ok, detail)``.  All randomness comes
from ``random.Random`` seeded per check, so runs are reproducible.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import product

from . import builtins as bt
from . import library as lib
from .birmap import (RatFunc, affine_jacobian, equal_up_to_coordinate_permutation,
                     equal_up_to_scalar, jacobian, linear_embed, parse_map, rational_jacobian,
                     sigma, to_affine, compose)
from .certify import certify_monomial, certify_tame_elementary, verify, verify_nagata
from .fields import GF, QQ
from .monomial import (MonomialMap, f2_orbit_index, gl_full_decompose, gl_odd_decompose,
                       random_gl_odd, random_not_odd, random_unimodular)
from .obstruction import NO_OBSTRUCTION, OBSTRUCTED, discrepancy, gn_obstruction
from .poly import Poly, squarefree_decompose
from .words import SIGMA, GnWord, Lin, eval_word

SEED = 20161019


def _xprod(n, exp, nvars=None, field=QQ):
    nvars = n + 1 if nvars is None else nvars
    return Poly.monomial(tuple(exp if i <= n else 0 for i in range(nvars)), 1, field)


def _random_homogeneous(nv, deg, rng, bound=5, terms=4):
    while True:
        p = Poly.zero(nv)
        for _ in range(terms):
            cut = sorted(rng.randint(0, deg) for _ in range(nv - 1))
            e = [b - a for a, b in zip([0] + cut, cut + [deg])]
            p = p + Poly.monomial(tuple(e), rng.randint(-bound, bound))
        if not p.is_zero():
            return p


def random_linear(n, rng, dense=0.3) -> Lin:
    """A random invertible matrix: dense with small entries with probability ``dense``,
    otherwise a signed permutation times one to three shears."""
    if rng.random() < dense:
        while True:
            M = [[Fraction(rng.randint(-2, 2)) for _ in range(n + 1)] for _ in range(n + 1)]
            if mat_det_q(M):
                return Lin(M)
    perm = list(range(n + 1))
    rng.shuffle(perm)
    M = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i, j in enumerate(perm):
        M[i][j] = Fraction(rng.choice((1, -1, 2, -2, 3)))
    L = Lin(M)
    for _ in range(rng.randint(1, 3)):
        i, j = rng.sample(range(n + 1), 2)
        E = [[Fraction(int(a == b)) for b in range(n + 1)] for a in range(n + 1)]
        E[i][j] = Fraction(rng.choice((1, -1, 2)))
        L = L @ Lin(E)
    return L


def mat_det_q(M) -> Fraction:
    """Determinant of a rational matrix by Gaussian elimination."""
    M = [list(r) for r in M]
    m, det = len(M), Fraction(1)
    for c in range(m):
        piv = next((r for r in range(c, m) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, m):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def random_gn_word(n, rng, max_len=6) -> GnWord:
    """Alternating sigma and linear letters, so that little cancels."""
    k = rng.randint(1, max_len)
    start = rng.random() < 0.5
    letters = [SIGMA if (i % 2 == 0) == start else random_linear(n, rng) for i in range(k)]
    return GnWord(n, letters)


# ---------------------------------------------------------------------------
# the criteria


def check_jacobian_sigma():
    """Jac(sigma_n) = n (-1)^n prod x_i^(n-1) for n = 2..5."""
    bad = []
    for n in range(2, 6):
        expected = _xprod(n, n - 1).scale(n * (-1) ** n)
        if jacobian(sigma(n)) != expected:
            bad.append(n)
    return not bad, "n = 2..5 exact" if not bad else f"mismatch for n in {bad}"


def check_lemma_identity(instances=100):
    """Jac(h f) = (1 + d/e) Jac(f) h^(n+1) for random homogeneous h, f."""
    rng = random.Random(SEED + 2)
    fails = 0
    for _ in range(instances):
        n = rng.randint(1, 3)
        nv = n + 1
        d = rng.randint(1, 3)
        e = rng.choice((-2, -1, 1, 2))
        dq = rng.randint(max(0, -e), 2)
        q = _random_homogeneous(nv, dq, rng)
        ps = [_random_homogeneous(nv, e + dq, rng) for _ in range(nv)]
        h = _random_homogeneous(nv, d, rng)
        # unreduced fractions, compared by cross-multiplication
        lhs = rational_jacobian([RatFunc(p * h, q, reduce=False) for p in ps], range(nv),
                                reduce=False)
        J = rational_jacobian([RatFunc(p, q, reduce=False) for p in ps], range(nv), reduce=False)
        rhs_num = (J.num * h ** nv).scale(1 + Fraction(d, e))
        if lhs.num * J.den != rhs_num * lhs.den:
            fails += 1
    return fails == 0, f"{instances - fails}/{instances} instances hold"


def check_example_degrees():
    """g = sigma alpha sigma and its inverse on P^3: printed formulas, degrees 4 and 3."""
    g, gw = bt.builtin("asym_g", 3)
    gi, giw = bt.builtin("asym_ginv", 3)
    eg, egi = eval_word(gw), eval_word(giw)
    ok = (equal_up_to_scalar(eg, g) and equal_up_to_scalar(egi, gi)
          and eg.degree == 4 and egi.degree == 3
          and equal_up_to_scalar(compose(eg, egi), lib.frac_map(3, [])))
    return ok, f"deg g = {eg.degree}, deg g^-1 = {egi.degree}"


BUILTIN_CASES = (
    [("theta", n, None) for n in (2, 3, 4)]
    + [("tau", 3, None), ("tau", 4, None), ("tau_prime", 3, None)]
    + [("chi0", 3, None), ("chi0", 4, None), ("chi1", 4, None), ("mu", 3, None)]
    + [("nu", n, None) for n in (3, 4, 5)]
    + [("psi", 3, {"k": 2}), ("psi", 5, {"k": 2}), ("psi", 5, {"k": 3}), ("xi", 4, None)]
)


def check_builtin_words(table=None):
    """Stored words evaluate to the stored closed forms."""
    bad, slow = [], []
    for name, n, params in BUILTIN_CASES:
        t = time.perf_counter()
        try:
            ok = bt.check_builtin(name, n, params, table)
        except Exception as exc:  # a broken table entry is a failure, not a crash
            ok = False
            name = f"{name} ({exc})"
        if time.perf_counter() - t > 5:
            slow.append(f"{name}/{n}")
        if not ok:
            bad.append(f"{name}/{n}")
    ok = not bad and not slow
    detail = f"{len(BUILTIN_CASES)} words verified"
    if bad:
        detail = "mismatch: " + ", ".join(bad)
    elif slow:
        detail = "slower than 5 s: " + ", ".join(slow)
    return ok, detail


def check_obstructions(samples=30):
    """Obstruction fires on the known non-members and never on random G_3 words."""
    targets = [lib.xi_map(3), lib.xi_map(5), lib.quad_involution_map(3),
               lib.square_factor_map(3, "x1", "x2*x3")]
    missed = [i for i, f in enumerate(targets) if gn_obstruction(f).verdict != OBSTRUCTED]
    rng = random.Random(SEED + 5)
    false_hits = top = 0
    for _ in range(samples):
        f = eval_word(random_gn_word(3, rng))
        top = max(top, f.degree)
        if gn_obstruction(f).verdict != NO_OBSTRUCTION:
            false_hits += 1
    ok = not missed and not false_hits
    return ok, (f"{4 - len(missed)}/4 obstructed, {false_hits}/{samples} false positives "
                f"(word degrees up to {top})")


def check_discrepancy():
    """Multiplicities in the Jacobian for xi_n, sigma_n and the maps phi(n, m)."""
    bad = []
    for n in (3, 4):
        x1 = Poly.var(1, n + 1)
        if discrepancy(lib.xi_map(n), x1) != 1:
            bad.append(f"xi{n}")
    for n in range(2, 6):
        for i in range(n + 1):
            if discrepancy(sigma(n), Poly.var(i, n + 1)) != n - 1:
                bad.append(f"sigma{n}/x{i}")
    for n, m in ((4, 2), (4, 3), (5, 3)):
        # the centre of the blow-up has dimension n - m
        if discrepancy(lib.phi_block_map(n, m), Poly.var(1, n + 1)) != n - (n - m) - 1:
            bad.append(f"phi({n},{m})")
    return not bad, "all match" if not bad else "mismatch: " + ", ".join(bad)


def check_parity(samples=30):
    """Every Jacobian multiplicity is even for random words in sigma_3 and linear maps."""
    rng = random.Random(SEED + 7)
    odd = top = 0
    for _ in range(samples):
        f = eval_word(random_gn_word(3, rng))
        top = max(top, f.degree)
        if any(m % 2 for _, m in squarefree_decompose(jacobian(f)).factors):
            odd += 1
    return odd == 0, (f"{samples - odd}/{samples} words with even multiplicities "
                      f"(word degrees up to {top})")


def check_gl_odd(samples=200):
    """Orbit index 2^n - 1 and decomposition round-trips."""
    idx = {n: f2_orbit_index(n) for n in range(2, 9)}
    bad_idx = [n for n, v in idx.items() if v != 2 ** n - 1]
    rng = random.Random(SEED + 8)
    fails = 0
    for n in (3, 4):
        for _ in range(samples):
            A = random_gl_odd(n, rng, rng.randint(1, 10))
            if gl_odd_decompose(A).evaluate() != A:
                fails += 1
    for n in range(2, 6):
        for _ in range(samples):
            A = random_unimodular(n, rng, rng.randint(1, 10))
            if gl_full_decompose(A).evaluate() != A:
                fails += 1
    ok = not bad_idx and not fails
    return ok, f"indices {list(idx.values())}, {fails} round-trip failures"


def _random_coeffs(n, rng):
    return tuple(Fraction(rng.choice((1, -1, 2, 3, -1)), rng.choice((1, 1, 2, 5)))
                 for _ in range(n))


def check_monomial_theorem(samples=100, rejects=50):
    """Monomial maps: words for members, obstructions for the rest, all re-verified."""
    rng = random.Random(SEED + 9)
    t0 = time.perf_counter()
    certified = failures = 0
    for n in (3, 4, 5):
        for _ in range(samples):
            A = random_gl_odd(n, rng, rng.randint(1, 6)) if n % 2 else \
                random_unimodular(n, rng, rng.randint(1, 6))
            m = MonomialMap(_random_coeffs(n, rng), A)
            c = certify_monomial(m)
            if c.word is not None and c.obstruction is None and verify(c.word, c.target):
                certified += 1
            else:
                failures += 1
    rejected = 0
    for k in range(rejects):
        n = 3 if k % 2 else 5
        A = random_not_odd(n, rng, rng.randint(1, 6))
        c = certify_monomial(MonomialMap(_random_coeffs(n, rng), A))
        if c.word is None and c.obstruction is not None and c.obstruction.verdict == OBSTRUCTED:
            rejected += 1
    dolg = certify_monomial(MonomialMap.from_matrix(_dolgachev_matrix()))
    dolg_ok = dolg.word is not None and verify(dolg.word, lib.dolgachev_map())
    elapsed = time.perf_counter() - t0
    ok = not failures and rejected == rejects and dolg_ok and elapsed < 120
    return ok, (f"{certified}/{3 * samples} certified, {rejected}/{rejects} obstructed, "
                f"Dolgachev {'certified' if dolg_ok else 'FAILED'}, {elapsed:.1f} s")


def _dolgachev_matrix():
    from .monomial import from_projective
    return from_projective(lib.dolgachev_map()).matrix


def check_linear_embedding():
    """iota(sigma_n) o sigma_(n+1) is theta_(n+1) up to relabelling; iota(nu) as displayed."""
    perms = {}
    for n in (2, 3):
        f = compose(linear_embed(sigma(n)), sigma(n + 1))
        perms[n] = equal_up_to_coordinate_permutation(f, lib.theta_map(n + 1))
    nu = {}
    for n in (2, 3):
        swap = parse_map("[" + ":".join(["x1", "x0"] + [f"x{i}" for i in range(2, n + 1)]) + "]")
        shown = lib.frac_map(n + 1, ["x1", "x0"] + [f"x{i}" for i in range(2, n + 1)]
                             + [(f"x{n + 1}*x1", "x0")])
        nu[n] = equal_up_to_scalar(linear_embed(swap), shown)
    ok = all(p is not None for p in perms.values()) and all(nu.values())
    return ok, f"theta permutations {perms}, iota(nu) {nu}"


TAME_CASES = [
    (2, (1,), 1), (2, (2,), -3), (2, (3,), 1), (2, (5,), Fraction(1, 2)),
    (3, (2, 0), 1), (3, (0, 2), 2), (3, (2, 1), 1), (3, (1, 1), 1), (3, (1, 0), -1),
    (3, (1, 3), 1), (3, (3, 1), 2), (3, (3, 3), 1), (3, (1, 2), 1), (3, (5, 1), 1),
    (4, (1, 1, 1), 1), (4, (2, 1, 0), -1), (4, (3, 1, 1), 1), (4, (0, 0, 3), 1),
    (3, (0, 0), 5), (3, (3, 0), 0),
]


def check_nagata_tame():
    """The Nagata identity and shear words for twenty exponent choices."""
    nag = verify_nagata()
    fails = []
    for n, v, c in TAME_CASES:
        try:
            certify_tame_elementary(n, v, c)
        except Exception:
            fails.append((n, v, c))
    ok = nag["ok"] and not fails
    return ok, f"Nagata {nag['ok']}, {len(TAME_CASES) - len(fails)}/{len(TAME_CASES)} shears"


def check_affine_jacobian():
    """Affine Jacobian of sigma_n is (-1)^n / (x1...xn)^2 over Q, F_2 and F_3."""
    bad = []
    for F, n in product((QQ, GF(2), GF(3)), (2, 3)):
        got = affine_jacobian(to_affine(sigma(n, F)))
        den = Poly.monomial((0,) + (2,) * n, 1, F)
        want = RatFunc(Poly.const((-1) ** n, n + 1, F), den)
        if got != want:
            bad.append(f"{F.name}/n={n}")
    return not bad, "Q, F2, F3 for n = 2, 3" if not bad else "mismatch: " + ", ".join(bad)


CRITERIA = {
    "jacobian": check_jacobian_sigma,
    "lemma": check_lemma_identity,
    "degrees": check_example_degrees,
    "builtins": check_builtin_words,
    "obstruction": check_obstructions,
    "discrepancy": check_discrepancy,
    "parity": check_parity,
    "glodd": check_gl_odd,
    "monomial": check_monomial_theorem,
    "embedding": check_linear_embedding,
    "tame": check_nagata_tame,
    "affine": check_affine_jacobian,
}


def run(only=None, table=None, out=None):
    """Run the selected criteria; return a list of ``(name, ok, detail, seconds)``."""
    names = list(CRITERIA)
    if only:
        unknown = [k for k in only if k not in CRITERIA]
        if unknown:
            raise KeyError(f"unknown criteria {unknown}; known: {', '.join(CRITERIA)}")
        names = [k for k in names if k in only]
    results = []
    for name in names:
        fn = CRITERIA[name]
        t = time.perf_counter()
        try:
            ok, detail = fn(table=table) if name == "builtins" else fn()
        except Exception as exc:
            ok, detail = False, f"error: {exc!r}"
        dt = time.perf_counter() - t
        results.append((name, ok, detail, dt))
        if out is not None:
            print(f"{'PASS' if ok else 'FAIL'}  {name:<12} {detail}  ({dt:.2f} s)", file=out,
                  flush=True)
    return results
