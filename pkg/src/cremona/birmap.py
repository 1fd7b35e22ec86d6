"""Rational maps of projective space and of affine charts.

A :class:`ProjMap` on P^n is stored as n+1 coprime homogeneous polynomials
of one common degree in ``x0..xn``, jointly normalized so that equal maps
have equal representations.  Affine maps live on the chart ``x0 = 1`` and
use the same polynomial ring (``x0`` simply never occurs).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd as igcd
from math import lcm as ilcm
from typing import Sequence

from .fields import QQ, Field
from .parse import format_components, format_poly, parse_components
from .poly import Poly, divide_exact, gcd, gcd_many


class MapError(ValueError):
    pass


class DegreeBoundExceeded(RuntimeError):
    pass


def joint_normalize(polys: Sequence[Poly]):
    """Return ``(s, [p/s ...])`` fixing a canonical scalar for a tuple.

    Over the rationals the coefficients become coprime integers and the
    first nonzero entry has positive leading coefficient; over a prime
    field the first nonzero entry becomes monic.
    """
    first = next(p for p in polys if not p.is_zero())
    F = first.field
    if F.p:
        s = first.leading_coeff()
    else:
        den, num = 1, 0
        for p in polys:
            for c in p.terms.values():
                if type(c) is not int:
                    den = ilcm(den, c.denominator)
        for p in polys:
            for c in p.terms.values():
                num = igcd(num, int(c * den))
                if num == 1:
                    break
        if first.leading_coeff() < 0:
            num = -num
        s = Fraction(num, den)
        s = s.numerator if s.denominator == 1 else s
    if s == 1:
        return 1, list(polys)
    inv = F.inv(s)
    return s, [p.scale(inv) for p in polys]


class ProjMap:
    """A rational self-map of P^n given by coprime homogeneous components."""

    __slots__ = ("n", "components", "degree", "_hash", "_linear_inv")

    def __init__(self, components: Sequence[Poly], *, _trusted=False):
        comps = list(components)
        if len(comps) < 2:
            raise MapError("a map of P^n needs n+1 >= 2 components")
        nv = len(comps)
        if not _trusted:
            F = comps[0].field
            for c in comps:
                if c.nvars != nv:
                    raise MapError(f"components must be polynomials in {nv} variables")
                if c.field != F:
                    raise MapError("components over different fields")
            nz = [c for c in comps if not c.is_zero()]
            if not nz:
                raise MapError("all components are zero")
            degs = {c.total_degree() for c in nz}
            if len(degs) != 1 or not all(c.is_homogeneous() for c in nz):
                raise MapError("components must be homogeneous of one common degree")
            h = gcd_many(nz)
            if not h.is_constant():
                comps = [divide_exact(c, h) for c in comps]
            _, comps = joint_normalize(comps)
        self.n = nv - 1
        self.components = tuple(comps)
        self.degree = max(c.total_degree() for c in comps)
        self._hash = None
        self._linear_inv = None

    @property
    def field(self) -> Field:
        return self.components[0].field

    @property
    def nvars(self) -> int:
        return self.n + 1

    def __eq__(self, other):
        return isinstance(other, ProjMap) and self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def __str__(self):
        return format_components(self.components)

    def __repr__(self):
        return f"ProjMap({self})"

    def __getitem__(self, i):
        return self.components[i]

    def to_json(self) -> dict:
        return {"n": self.n, "components": [format_poly(c) for c in self.components]}

    def __matmul__(self, other):
        return compose(self, other)


# ---------------------------------------------------------------------------
# construction helpers


def make_proj_map(components: Sequence[Poly]) -> ProjMap:
    return ProjMap(components)


def parse_map(text: str, field: Field = QQ) -> ProjMap:
    return ProjMap(parse_components(text, field))


def identity(n: int, field: Field = QQ) -> ProjMap:
    return ProjMap([Poly.var(i, n + 1, field) for i in range(n + 1)], _trusted=True)


def sigma(n: int, field: Field = QQ) -> ProjMap:
    """The standard involution [1/x0 : ... : 1/xn], cleared to degree n."""
    comps = []
    for i in range(n + 1):
        e = tuple(0 if j == i else 1 for j in range(n + 1))
        comps.append(Poly._make(n + 1, {e: 1}, field))
    return ProjMap(comps, _trusted=True)


def linear_map(matrix, field: Field = QQ) -> ProjMap:
    """x -> M x, i.e. component i is sum_j M[i][j] x_j."""
    m = len(matrix)
    comps = []
    for row in matrix:
        if len(row) != m:
            raise MapError("linear map needs a square matrix")
        t = {}
        for j, a in enumerate(row):
            a = field.reduce(field(a))
            if a:
                e = [0] * m
                e[j] = 1
                t[tuple(e)] = a
        comps.append(Poly._make(m, t, field))
    return ProjMap(comps)


def linear_matrix(f: ProjMap):
    """Coefficient matrix of a degree-one map."""
    if f.degree != 1:
        raise MapError("not a linear map")
    m = f.nvars
    M = [[0] * m for _ in range(m)]
    for i, c in enumerate(f.components):
        for e, a in c.terms.items():
            M[i][e.index(1)] = a
    return M


def matrix_inverse(M, field: Field = QQ):
    """Gauss-Jordan inverse over a field; raises MapError when singular."""
    m = len(M)
    A = [[field(x) for x in row] + [1 if i == j else 0 for j in range(m)]
         for i, row in enumerate(M)]
    for col in range(m):
        piv = next((r for r in range(col, m) if field.reduce(A[r][col])), None)
        if piv is None:
            raise MapError("singular linear map")
        A[col], A[piv] = A[piv], A[col]
        inv = field.inv(A[col][col])
        A[col] = [field.reduce(x * inv) for x in A[col]]
        for r in range(m):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [field.reduce(x - f * y) for x, y in zip(A[r], A[col])]
    return [row[m:] for row in A]


def is_linear(f: ProjMap) -> bool:
    return f.degree == 1


def linear_inverse(f: ProjMap) -> ProjMap:
    if f._linear_inv is None:
        f._linear_inv = linear_map(matrix_inverse(linear_matrix(f), f.field), f.field)
    return f._linear_inv


def _invertible_linear(f: ProjMap) -> bool:
    if f.degree != 1:
        return False
    try:
        linear_inverse(f)
    except MapError:
        return False
    return True


# ---------------------------------------------------------------------------
# composition


def _check_same(f: ProjMap, g: ProjMap):
    if f.n != g.n:
        raise MapError(f"dimension mismatch: P^{f.n} vs P^{g.n}")
    if f.field != g.field:
        raise MapError("field mismatch")


def compose_with_cofactor(f: ProjMap, g: ProjMap):
    """Return ``(fg, h, s)`` where the formal substitution equals ``s*h*fg``.

    ``fg`` is f after g (substitute g's components into f), ``h`` the
    normalized common factor cancelled, ``s`` a scalar.
    """
    _check_same(f, g)
    formal = [c.subs(g.components) for c in f.components]
    nz = [c for c in formal if not c.is_zero()]
    if not nz:
        raise MapError("composition is not dominant (all components vanish)")
    if _invertible_linear(f) or _invertible_linear(g):
        h = Poly.one(f.nvars, f.field)
    else:
        h = gcd_many(nz)
    comps = formal if h.is_constant() else [divide_exact(c, h) for c in formal]
    s, comps = joint_normalize(comps)
    return ProjMap(comps, _trusted=True), h, s


def compose(f: ProjMap, g: ProjMap, max_degree: int | None = None) -> ProjMap:
    """f after g, with the common factor of the formal composition removed."""
    fg = compose_with_cofactor(f, g)[0]
    if max_degree is not None and fg.degree > max_degree:
        raise DegreeBoundExceeded(
            f"intermediate degree {fg.degree} exceeds the bound {max_degree}")
    return fg


def compose_all(maps: Sequence[ProjMap], max_degree: int | None = None) -> ProjMap:
    """maps[0] after maps[1] after ... after maps[-1]."""
    acc = maps[0]
    for m in maps[1:]:
        acc = compose(acc, m, max_degree)
    return acc


def degree(f: ProjMap) -> int:
    return f.degree


def equal_up_to_scalar(f: ProjMap, g: ProjMap) -> bool:
    """Cross-multiplication test f_i g_j == f_j g_i."""
    if f.n != g.n:
        return False
    fc, gc = f.components, g.components
    if [c.is_zero() for c in fc] != [c.is_zero() for c in gc]:
        return False
    i0 = next(i for i, c in enumerate(fc) if not c.is_zero())
    return all(fc[i] * gc[i0] == fc[i0] * gc[i] for i in range(len(fc)))


def permutation_map(perm: Sequence[int], field: Field = QQ) -> ProjMap:
    """Linear map whose component i is x_{perm[i]}."""
    m = len(perm)
    return linear_map([[1 if j == perm[i] else 0 for j in range(m)] for i in range(m)], field)


def conjugate_by_permutation(f: ProjMap, perm: Sequence[int]) -> ProjMap:
    p = permutation_map(perm, f.field)
    return compose(compose(p, f), linear_inverse(p))


def equal_up_to_coordinate_permutation(f: ProjMap, g: ProjMap):
    """Return a permutation ``p`` with P f P^-1 == g up to scalar, else None."""
    if f.n != g.n or f.degree != g.degree:
        return None
    for perm in permutations(range(f.n + 1)):
        if equal_up_to_scalar(conjugate_by_permutation(f, perm), g):
            return list(perm)
    return None


# ---------------------------------------------------------------------------
# Jacobians


def determinant(M):
    """Determinant of a square matrix of polynomials (subset expansion)."""
    m = len(M)
    ring = next((x for row in M for x in row if isinstance(x, Poly)), None)
    zero = Poly.zero(ring.nvars, ring.field)
    layer = {0: Poly.one(ring.nvars, ring.field)}
    for r in range(m):
        nxt: dict = {}
        row = M[r]
        for mask, d in layer.items():
            for j in range(m):
                if mask >> j & 1 or row[j].is_zero():
                    continue
                sign = -1 if bin(mask >> (j + 1)).count("1") % 2 else 1
                t = row[j] * d
                if sign < 0:
                    t = -t
                key = mask | (1 << j)
                nxt[key] = nxt[key] + t if key in nxt else t
        layer = {k: v for k, v in nxt.items() if not v.is_zero()}
        if not layer:
            return zero
    return layer.get((1 << m) - 1, zero)


def jacobian_of(polys: Sequence[Poly]) -> Poly:
    """det(d f_i / d x_j) for n+1 polynomials in n+1 variables."""
    return determinant([[p.diff(j) for j in range(len(polys))] for p in polys])


def jacobian(f: ProjMap) -> Poly:
    return jacobian_of(f.components)


# ---------------------------------------------------------------------------
# rational functions and affine charts


class RatFunc:
    """A reduced fraction num/den with normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = True):
        if den is None:
            den = Poly.one(num.nvars, num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.one(num.nvars, num.field)
        elif reduce and not den.is_constant():
            g = gcd(num, den)
            if not g.is_constant():
                num, den = divide_exact(num, g), divide_exact(den, g)
        s, den = den.content_and_primitive()
        if s != 1:
            num = num.scale(num.field.inv(s))
        self.num, self.den = num, den

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, o):
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        if isinstance(o, RatFunc):
            return RatFunc(self.num * o.num, self.den * o.den)
        return RatFunc(self.num * o, self.den)

    def __truediv__(self, o):
        return RatFunc(self.num * o.den, self.den * o.num)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def diff(self, v: int) -> "RatFunc":
        return RatFunc(self.num.diff(v) * self.den - self.num * self.den.diff(v),
                       self.den * self.den)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __str__(self):
        if self.den == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    __repr__ = __str__


def rational_jacobian(fs: Sequence[RatFunc], variables: Sequence[int], reduce: bool = True) -> RatFunc:
    """det(d f_i / d x_v) for rational functions, via one common denominator per row."""
    rows, den = [], None
    for f in fs:
        q = f.den
        dq = [q.diff(v) for v in variables]
        rows.append([f.num.diff(v) * q - f.num * dqv for v, dqv in zip(variables, dq)])
        den = q * q if den is None else den * q * q
    return RatFunc(determinant(rows), den, reduce=reduce)


def _dehomogenize(p: Poly) -> Poly:
    out = {}
    red = p.field.reduce
    for e, c in p.terms.items():
        k = (0,) + e[1:]
        v = red(out.get(k, 0) + c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return Poly._make(p.nvars, out, p.field)


class AffMap:
    """A rational map of the chart x0 = 1, components g_1..g_n as fractions."""

    __slots__ = ("n", "components")

    def __init__(self, components: Sequence[RatFunc]):
        self.components = tuple(components)
        self.n = len(self.components)
        for c in self.components:
            if c.num.nvars != self.n + 1:
                raise MapError("affine components must use the ring x0..xn")

    def __eq__(self, other):
        return isinstance(other, AffMap) and self.components == other.components

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    __repr__ = __str__


def to_affine(f: ProjMap) -> AffMap:
    g0 = _dehomogenize(f.components[0])
    if g0.is_zero():
        raise MapError("first component vanishes on the chart x0 = 1")
    return AffMap([RatFunc(_dehomogenize(c), g0) for c in f.components[1:]])


def _homogenize(p: Poly, d: int) -> Poly:
    out = {}
    for e, c in p.terms.items():
        out[(d - sum(e[1:]),) + e[1:]] = c
    return Poly._make(p.nvars, out, p.field)


def from_affine(g: AffMap) -> ProjMap:
    nv = g.n + 1
    F = g.components[0].num.field
    den = Poly.one(nv, F)
    for c in g.components:
        den = divide_exact(den * c.den, gcd(den, c.den))
    polys = [den] + [divide_exact(den, c.den) * c.num for c in g.components]
    d = max(p.total_degree() for p in polys)
    d = max(d, 1)
    return ProjMap([_homogenize(p, d) for p in polys])


def affine_jacobian(g: AffMap) -> RatFunc:
    return rational_jacobian(g.components, range(1, g.n + 1))


# ---------------------------------------------------------------------------
# linear embedding P^n -> P^(n+1)


def linear_embed(f: ProjMap) -> ProjMap:
    """Extend f to P^(n+1) acting on the chart [1:x1:..:xn] and fixing x_{n+1}."""
    nv = f.nvars + 1
    comps = [c.embed(nv) for c in f.components]
    x0 = Poly.var(0, nv, f.field)
    last = Poly.var(nv - 1, nv, f.field)
    return ProjMap([c * x0 for c in comps] + [comps[0] * last])
