"""Monomial maps (k*)^n x| GL(n,Z) and unimodular integer matrix words.

A matrix ``A`` stands for the affine map whose i-th coordinate is
``alpha_i * x1^a_i1 * ... * xn^a_in``; composition then corresponds to the
matrix product (``m_A o m_B = m_AB``).  Matrices are tuples of tuples of
ints; indices in words are 0-based.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .birmap import ProjMap
from .fields import QQ, Field
from .poly import Poly


class NotMonomial(ValueError):
    pass


class NotUnimodular(ValueError):
    pass


class NotOdd(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer matrices


def mat(rows) -> tuple:
    return tuple(tuple(int(x) for x in r) for r in rows)


def eye(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(A, B) -> tuple:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_det(A) -> int:
    n = len(A)
    M = [[Fraction(x) for x in r] for r in A]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return int(det)


def mat_inv(A) -> tuple:
    """Inverse of a unimodular matrix (exact, integer)."""
    n = len(A)
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise NotUnimodular("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    out = [[x for x in r[n:]] for r in M]
    if any(x.denominator != 1 for r in out for x in r):
        raise NotUnimodular("inverse is not integral")
    return mat(out)


def check_unimodular(A) -> tuple:
    A = mat(A)
    if any(len(r) != len(A) for r in A):
        raise NotUnimodular("matrix is not square")
    if abs(mat_det(A)) != 1:
        raise NotUnimodular(f"determinant {mat_det(A)} is not +-1")
    return A


def perm_matrix(perm: Sequence[int]) -> tuple:
    """P with P e_k = e_perm[k]."""
    n = len(perm)
    return tuple(tuple(1 if perm[c] == r else 0 for c in range(n)) for r in range(n))


def conjugate(M, perm) -> tuple:
    """P M P^-1: the entry M[a][b] moves to position (perm[a], perm[b])."""
    n = len(M)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[perm[a]][perm[b]] = M[a][b]
    return mat(out)


def perm_with(n: int, fixed: dict) -> tuple:
    """A permutation of range(n) with the prescribed values, others in order."""
    used = set(fixed.values())
    free = iter(v for v in range(n) if v not in used)
    return tuple(fixed[k] if k in fixed else next(free) for k in range(n))


def perm_inverse(perm) -> tuple:
    inv = [0] * len(perm)
    for k, v in enumerate(perm):
        inv[v] = k
    return tuple(inv)


def M_theta(n: int) -> tuple:
    return mat([[(-1 if i == 0 else 1) if i == j else 0 for j in range(n)] for i in range(n)])


def M_mu(n: int) -> tuple:
    M = [list(r) for r in eye(n)]
    M[1][0] = 2
    return mat(M)


def M_nu(n: int) -> tuple:
    M = [list(r) for r in eye(n)]
    M[1][0] = M[2][0] = 1
    return mat(M)


def transvection(n: int, i: int, j: int, s: int = 1) -> tuple:
    M = [list(r) for r in eye(n)]
    M[i][j] = s
    return mat(M)


def is_gl_odd(A) -> bool:
    return all(sum(col) % 2 for col in zip(*A))


def gl_odd_test(A) -> bool:
    """True iff every column sum of the unimodular matrix A is odd."""
    return is_gl_odd(check_unimodular(A))


# ---------------------------------------------------------------------------
# words in GL(n,Z)


_KINDS = ("perm", "theta", "mu", "nu", "transvection")


@dataclass(frozen=True)
class GlLetter:
    kind: str
    exp: int = 1
    perm: tuple | None = None  # the permutation itself, or a conjugator
    i: int | None = None
    j: int | None = None
    sign: int | None = None

    def base(self, n: int) -> tuple:
        if self.kind == "perm":
            return perm_matrix(self.perm)
        if self.kind == "theta":
            M = M_theta(n)
        elif self.kind == "mu":
            M = M_mu(n)
        elif self.kind == "nu":
            M = M_nu(n)
        elif self.kind == "transvection":
            return transvection(n, self.i, self.j, self.sign)
        else:
            raise ValueError(f"unknown letter kind {self.kind!r}")
        return conjugate(M, self.perm) if self.perm else M

    def matrix(self, n: int) -> tuple:
        M = self.base(n)
        return M if self.exp == 1 else mat_inv(M)

    def inverse(self) -> "GlLetter":
        if self.kind == "transvection":
            return GlLetter("transvection", 1, None, self.i, self.j, -self.sign)
        if self.kind == "perm":
            return GlLetter("perm", 1, perm_inverse(self.perm))
        if self.kind == "theta":
            return self
        return GlLetter(self.kind, -self.exp, self.perm)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "exp": self.exp}
        if self.perm is not None:
            d["perm"] = list(self.perm)
        if self.kind == "transvection":
            d.update(i=self.i, j=self.j, sign=self.sign)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GlLetter":
        if d.get("kind") not in _KINDS:
            raise ValueError(f"unknown letter kind {d.get('kind')!r}")
        perm = tuple(d["perm"]) if d.get("perm") is not None else None
        return cls(d["kind"], int(d.get("exp", 1)), perm, d.get("i"), d.get("j"), d.get("sign"))


@dataclass
class GlWord:
    n: int
    letters: list = dc_field(default_factory=list)
    target: tuple | None = None

    def evaluate(self) -> tuple:
        M = eye(self.n)
        for L in self.letters:
            M = mat_mul(M, L.matrix(self.n))
        return M

    def inverse(self) -> "GlWord":
        return GlWord(self.n, [L.inverse() for L in reversed(self.letters)])

    def __len__(self):
        return len(self.letters)

    def to_json(self) -> dict:
        d = {"n": self.n, "letters": [L.to_json() for L in self.letters]}
        if self.target is not None:
            d["target"] = [list(r) for r in self.target]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GlWord":
        target = mat(d["target"]) if d.get("target") is not None else None
        return cls(int(d["n"]), [GlLetter.from_json(x) for x in d["letters"]], target)


def _sign_letter(n: int, k: int) -> GlLetter:
    """Mtheta conjugated so that its -1 sits at position k."""
    return GlLetter("theta", 1, perm_with(n, {0: k}) if k else None)


def gl_full_decompose(A) -> GlWord:
    """Write a unimodular matrix as permutations, signs and unit transvections."""
    A = check_unimodular(A)
    n = len(A)
    M = [list(r) for r in A]
    ops: list[GlLetter] = []  # left multiplications applied to M, in order

    def row_add(r, p, q):
        # row_r += q * row_p, as |q| unit transvections
        s = 1 if q > 0 else -1
        for _ in range(abs(q)):
            ops.append(GlLetter("transvection", 1, None, r, p, s))
        M[r] = [x + q * y for x, y in zip(M[r], M[p])]

    for c in range(n):
        while True:
            rows = [r for r in range(c, n) if M[r][c]]
            if len(rows) <= 1:
                break
            p = min(rows, key=lambda r: (abs(M[r][c]), r))
            for r in rows:
                if r != p:
                    q = abs(M[r][c]) // abs(M[p][c])
                    if (M[r][c] > 0) == (M[p][c] > 0):
                        q = -q
                    row_add(r, p, q)
        p = next(r for r in range(c, n) if M[r][c])
        if p != c:
            swap = list(range(n))
            swap[p], swap[c] = c, p
            ops.append(GlLetter("perm", 1, tuple(swap)))
            M[c], M[p] = M[p], M[c]
        if M[c][c] == -1:
            ops.append(_sign_letter(n, c))
            M[c] = [-x for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                row_add(r, c, -M[r][c])
    assert mat(M) == eye(n)
    word = GlWord(n, [L.inverse() for L in ops], A)
    assert word.evaluate() == A
    return word


def _lex_size(col):
    return (sum(abs(a) for a in col), max(abs(a) for a in col))


def gl_odd_decompose(A) -> GlWord:
    """Write A in GL(n,Z)_odd (n >= 3) over permutations, Mtheta, Mmu, Mnu."""
    A = check_unimodular(A)
    n = len(A)
    if n < 3:
        raise ValueError("gl_odd_decompose needs n >= 3")
    if not is_gl_odd(A):
        raise NotOdd("matrix has a column with even sum")
    B = A
    hs: list[GlLetter] = []  # left multiplications h_1, h_2, ...

    def left(L):
        nonlocal B
        hs.append(L)
        B = mat_mul(L.matrix(n), B)

    def last_col():
        return [r[-1] for r in B]

    target = tuple(int(k == n - 1) for k in range(n))
    nu_conj = perm_with(n, {0: n - 2, 1: n - 3, 2: n - 1})
    while True:
        # step 1: sort by absolute value, then make entries nonnegative
        col = last_col()
        order = sorted(range(n), key=lambda k: abs(col[k]))
        perm = perm_inverse(order)
        if perm != tuple(range(n)):
            left(GlLetter("perm", 1, perm))
        for k, a in enumerate(last_col()):
            if a < 0:
                left(_sign_letter(n, k))
        col = last_col()
        if tuple(col) == target:
            break
        before = _lex_size(col)
        # step 2: a_{n-2} -= a_{n-1}, a_n -= a_{n-1}
        left(GlLetter("nu", -1, nu_conj))
        assert _lex_size(last_col()) < before, "reduction step did not decrease"

    # B has last column e_n; decompose its leading block and lift
    block = tuple(r[:-1] for r in B[:-1])
    sub = gl_full_decompose(block)
    lifted: list[GlLetter] = []
    for L in sub.letters:
        if L.kind == "perm":
            lifted.append(GlLetter("perm", 1, tuple(L.perm) + (n - 1,)))
        elif L.kind == "theta":
            lifted.append(GlLetter("theta", 1, tuple(L.perm) + (n - 1,) if L.perm else None))
        else:
            conj = perm_with(n, {0: L.j, 1: L.i, 2: n - 1})
            lifted.append(GlLetter("nu", L.sign, conj))
    W = GlWord(n, lifted).evaluate()
    C = mat_mul(mat_inv(W), B)
    kernel: list[GlLetter] = []
    for j in range(n - 1):
        r = C[n - 1][j]
        assert r % 2 == 0
        L = GlLetter("mu", 1 if r > 0 else -1, perm_with(n, {0: j, 1: n - 1}))
        kernel.extend([L] * (abs(r) // 2))
    word = GlWord(n, [L.inverse() for L in hs] + lifted + kernel, A)
    assert word.evaluate() == A
    return word


# ---------------------------------------------------------------------------
# F2 orbit index


def f2_orbit_index(n: int) -> int:
    """Orbit size of (1,...,1) under right multiplication by GL(n, F2)."""
    if not 2 <= n <= 12:
        raise ValueError("n must lie in 2..12")
    start = (1 << n) - 1
    seen = {start}
    frontier = [start]
    gens = [(i, j) for i in range(n) for j in range(n) if i != j]
    while frontier:
        nxt = []
        for v in frontier:
            for i, j in gens:
                w = v ^ (1 << j) if v >> i & 1 else v
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# monomial maps


@dataclass(frozen=True)
class MonomialMap:
    coeffs: tuple
    matrix: tuple
    field: Field = QQ

    def __post_init__(self):
        M = check_unimodular(self.matrix)
        object.__setattr__(self, "matrix", M)
        cs = tuple(self.field.reduce(self.field(c)) for c in self.coeffs)
        if len(cs) != len(M):
            raise ValueError("need one coefficient per row")
        if any(c == 0 for c in cs):
            raise ValueError("torus coefficients must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_matrix(cls, A, field: Field = QQ) -> "MonomialMap":
        return cls((1,) * len(A), A, field)

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs],
                "matrix": [list(r) for r in self.matrix]}


def _fpow(F: Field, c, e: int):
    return F.reduce(F(c) ** e) if e >= 0 else F.inv(F.reduce(F(c) ** -e))


def monomial_compose(a: MonomialMap, b: MonomialMap) -> MonomialMap:
    """a after b."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    F = a.field
    coeffs = []
    for i, row in enumerate(a.matrix):
        c = a.coeffs[i]
        for j, e in enumerate(row):
            if e:
                c = F.reduce(c * _fpow(F, b.coeffs[j], e))
        coeffs.append(c)
    return MonomialMap(tuple(coeffs), mat_mul(a.matrix, b.matrix), F)


def monomial_inverse(a: MonomialMap) -> MonomialMap:
    F = a.field
    Ai = mat_inv(a.matrix)
    # (beta, A^-1) with beta chosen so that a o inverse has unit coefficients
    beta = []
    for row in Ai:
        c = 1
        for j, e in enumerate(row):
            if e:
                c = F.reduce(c * _fpow(F, a.coeffs[j], -e))
        beta.append(c)
    return MonomialMap(tuple(beta), Ai, F)


def to_projective(m: MonomialMap) -> ProjMap:
    n = m.n
    rows = [(0,) * (n + 1)]
    for r in m.matrix:
        rows.append((-sum(r),) + tuple(r))
    mins = [min(col) for col in zip(*rows)]
    coeffs = (1,) + m.coeffs
    comps = [Poly._make(n + 1, {tuple(e - lo for e, lo in zip(row, mins)): c}, m.field)
             for row, c in zip(rows, coeffs)]
    return ProjMap(comps)


def from_projective(f: ProjMap) -> MonomialMap:
    terms = []
    for c in f.components:
        if len(c.terms) != 1:
            raise NotMonomial("component is not a single term")
        terms.append(next(iter(c.terms.items())))
    (e0, c0) = terms[0]
    F = f.field
    A = [[e[j] - e0[j] for j in range(1, f.n + 1)] for e, _ in terms[1:]]
    coeffs = tuple(F.div(c, c0) for _, c in terms[1:])
    try:
        return MonomialMap(coeffs, A, F)
    except NotUnimodular as exc:
        raise NotMonomial(f"not birational: {exc}") from None


def is_monomial_map(f: ProjMap) -> bool:
    try:
        from_projective(f)
    except NotMonomial:
        return False
    return True


# ---------------------------------------------------------------------------
# random generators (for tests and the acceptance suite)


def _random_perm(n, rng):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def random_gl_odd(n: int, rng: random.Random, length: int = 6) -> tuple:
    """Random short product of the GL_odd generators and their conjugates."""
    M = eye(n)
    for _ in range(length):
        kind = rng.choice(("perm", "theta", "mu", "nu", "nu"))
        if kind == "perm":
            L = GlLetter("perm", 1, _random_perm(n, rng))
        else:
            L = GlLetter(kind, rng.choice((1, -1)), _random_perm(n, rng))
        M = mat_mul(M, L.matrix(n))
    return M


def random_unimodular(n: int, rng: random.Random, length: int = 6) -> tuple:
    M = eye(n)
    for _ in range(length):
        r = rng.random()
        if r < 0.15:
            L = GlLetter("perm", 1, _random_perm(n, rng))
        elif r < 0.3:
            L = _sign_letter(n, rng.randrange(n))
        else:
            i, j = rng.sample(range(n), 2)
            L = GlLetter("transvection", 1, None, i, j, rng.choice((1, -1)))
        M = mat_mul(M, L.matrix(n))
    return M


def random_not_odd(n: int, rng: random.Random, length: int = 6) -> tuple:
    """Random unimodular matrix outside GL_odd."""
    while True:
        M = random_unimodular(n, rng, length)
        if not is_gl_odd(M):
            return M
