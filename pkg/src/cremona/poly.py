"""Sparse multivariate polynomials over an exact coefficient field.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
coefficients.  Variables are ``x0 .. x{n-1}``; the canonical order is
graded lexicographic with ``x0 > x1 > ...``.

GCDs over the rationals use Brown's dense modular algorithm (see
:mod:`cremona.modgcd`); the subresultant PRS on the variable of highest
degree is the fallback and the only method in characteristic p.  Cheap
exact steps come first: removal of the monomial content, a modular test
that proves coprimality, and dehomogenization of homogeneous inputs.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Sequence

from .fields import QQ, Field, UnsupportedCharacteristic


class NotDivisible(ArithmeticError):
    pass


class VariableMismatch(ValueError):
    pass


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class Poly:
    __slots__ = ("nvars", "terms", "field", "_hash")

    def __init__(self, nvars: int, terms=None, field: Field = QQ):
        self.nvars = nvars
        self.field = field
        clean = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                e = tuple(e)
                if len(e) != nvars:
                    raise VariableMismatch(f"exponent {e} has length != {nvars}")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                c = field(c) + clean.get(e, 0)
                c = field.reduce(c)
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, nvars, terms, field):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p.field = field
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, nvars, field=QQ):
        return cls._make(nvars, {}, field)

    @classmethod
    def const(cls, c, nvars, field=QQ):
        c = field.reduce(field(c))
        return cls._make(nvars, {(0,) * nvars: c} if c else {}, field)

    @classmethod
    def one(cls, nvars, field=QQ):
        return cls.const(1, nvars, field)

    @classmethod
    def var(cls, i, nvars, field=QQ):
        if not 0 <= i < nvars:
            raise VariableMismatch(f"x{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._make(nvars, {tuple(e): 1}, field)

    @classmethod
    def monomial(cls, exps, coeff=1, field=QQ):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff}, field)

    def _like(self, terms):
        return Poly._make(self.nvars, terms, self.field)

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degree_in(self, v: int) -> int:
        return max((e[v] for e in self.terms), default=-1)

    def occurring_vars(self) -> list[int]:
        seen = [False] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    seen[i] = True
        return [i for i, s in enumerate(seen) if s]

    def leading_exp(self) -> tuple:
        return max(self.terms, key=grlex_key)

    def leading_coeff(self):
        if not self.terms:
            return 0
        return self.terms[self.leading_exp()]

    def min_exps(self) -> tuple:
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars, self.field)
        if other.nvars != self.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")
        if other.field != self.field:
            raise VariableMismatch(f"field mismatch: {self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        r = dict(a)
        red = self.field.reduce
        for e, c in b.items():
            s = red(r.get(e, 0) + c)
            if s:
                r[e] = s
            else:
                r.pop(e, None)
        return self._like(r)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return self._like({e: red(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = self.field.reduce(self.field(c))
        if not c:
            return Poly.zero(self.nvars, self.field)
        if c == 1:
            return self
        red = self.field.reduce
        return self._like({e: red(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars, self.field)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        r: dict = {}
        get = r.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                r[e] = get(e, 0) + ca * cb
        red = self.field.reduce
        out = {}
        for e, c in r.items():
            c = red(c)
            if c:
                out[e] = c
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            c = self.field.reduce(c ** k)
            return self._like({tuple(x * k for x in e): c} if c else {})
        result = Poly.one(self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps, c=1):
        red = self.field.reduce
        return self._like({tuple(x + y for x, y in zip(e, exps)): red(v * c)
                           for e, v in self.terms.items()})

    def div_monomial(self, exps):
        out = {}
        for e, v in self.terms.items():
            d = tuple(x - y for x, y in zip(e, exps))
            if any(k < 0 for k in d):
                raise NotDivisible("monomial does not divide")
            out[d] = v
        return self._like(out)

    # -- calculus / substitution ------------------------------------------
    def diff(self, v: int):
        if not 0 <= v < self.nvars:
            raise VariableMismatch(f"x{v} out of range")
        red = self.field.reduce
        out = {}
        for e, c in self.terms.items():
            k = e[v]
            if k:
                c2 = red(c * k)
                if c2:
                    ne = list(e)
                    ne[v] = k - 1
                    ne = tuple(ne)
                    out[ne] = red(out.get(ne, 0) + c2)
                    if not out[ne]:
                        del out[ne]
        return self._like(out)

    def subs(self, images: Sequence["Poly"]):
        """Substitute ``images[i]`` for ``x_i``.  Images share a ring."""
        if len(images) != self.nvars:
            raise VariableMismatch("need one image per variable")
        if not images:
            return self
        ring = images[0]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            p = cache.get(key)
            if p is None:
                if k == 1:
                    p = images[i]
                elif k % 2 == 0:
                    h = power(i, k // 2)
                    p = h * h
                else:
                    p = power(i, k - 1) * images[i]
                cache[key] = p
            return p

        acc: dict = {}
        red = ring.field.reduce
        one = Poly.one(ring.nvars, ring.field)
        for e, c in self.terms.items():
            t = one
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t.terms.items():
                acc[te] = acc.get(te, 0) + tc * c
        return Poly._make(ring.nvars, {e: v for e, v in ((e, red(v)) for e, v in acc.items()) if v},
                          ring.field)

    def evaluate(self, point):
        """Evaluate at a point (sequence of field elements)."""
        F = self.field
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total += t
        return F.reduce(total)

    def embed(self, nvars: int, positions: Sequence[int] | None = None):
        """Reinterpret in a ring with ``nvars`` variables (x_i -> x_{positions[i]})."""
        if positions is None:
            positions = range(self.nvars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in zip(positions, e):
                ne[i] += k
            out[tuple(ne)] = c
        return Poly._make(nvars, out, self.field)

    def to_field(self, field: Field):
        return Poly(self.nvars, {e: field(c) for e, c in self.terms.items()}, field)

    # -- normalization -----------------------------------------------------
    def content_and_primitive(self):
        """Return ``(s, p)`` with ``self == s * p`` and ``p`` normalized.

        Over the rationals ``p`` has coprime integer coefficients and a
        positive graded-lex leading coefficient; over a prime field ``p`` is
        monic.
        """
        if not self.terms:
            return 0, self
        F = self.field
        if F.p:
            lc = self.leading_coeff()
            inv = pow(lc, -1, F.p)
            if lc == 1:
                return 1, self
            return lc, self._like({e: c * inv % F.p for e, c in self.terms.items()})
        vals = self.terms.values()
        den = 1
        for c in vals:
            if type(c) is not int:
                den = ilcm(den, c.denominator)
        num = 0
        for c in vals:
            num = igcd(num, int(c * den) if den != 1 else c)
            if num == 1:
                break
        if self.terms[self.leading_exp()] < 0:
            num = -num
        s = Fraction(num, den) if den != 1 else num
        if s == 1:
            return 1, self
        if den == 1:
            return s, self._like({e: c // num for e, c in self.terms.items()})
        return (s if type(s) is int else (s.numerator if s.denominator == 1 else s),
                self._like({e: int(c * den) // num for e, c in self.terms.items()}))

    def normalize(self):
        return self.content_and_primitive()[1]

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    # -- comparison / formatting ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return (self.nvars == other.nvars and self.field == other.field
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == self.field.reduce(self.field(other))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self):
        from .parse import format_poly
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.nvars}, {str(self)!r})"


# ---------------------------------------------------------------------------
# exact division


def divide_exact(a: Poly, b: Poly) -> Poly:
    """Return ``q`` with ``a == b*q``; raise :class:`NotDivisible` otherwise."""
    b = a._check(b)
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.terms:
        return a
    F = a.field
    if len(b.terms) == 1:
        (be, bc), = b.terms.items()
        out = {}
        for e, c in a.terms.items():
            d = tuple(x - y for x, y in zip(e, be))
            if any(k < 0 for k in d):
                raise NotDivisible("monomial divisor does not divide")
            out[d] = c if bc == 1 else F.div(c, bc)
        return Poly._make(a.nvars, out, F)
    if b.total_degree() > a.total_degree():
        raise NotDivisible("divisor degree too large")
    be = b.leading_exp()
    bc = b.terms[be]
    b_rest = [(e, c) for e, c in b.terms.items() if e != be]
    red = F.reduce
    div = F.div
    r = dict(a.terms)
    heap = [(-sum(e), tuple(-k for k in e), e) for e in r]
    heapq.heapify(heap)
    q = {}
    while r:
        while True:
            _, _, e = heapq.heappop(heap)
            if e in r:
                break
        c = r.pop(e)
        d = tuple(x - y for x, y in zip(e, be))
        if any(k < 0 for k in d):
            raise NotDivisible("leading term not divisible")
        qc = div(c, bc)
        q[d] = qc
        for oe, oc in b_rest:
            t = tuple(x + y for x, y in zip(oe, d))
            old = r.get(t)
            if old is None:
                v = red(-qc * oc)
                r[t] = v
                heapq.heappush(heap, (-sum(t), tuple(-k for k in t), t))
            else:
                v = red(old - qc * oc)
                if v:
                    r[t] = v
                else:
                    del r[t]
            # stale heap entries are skipped on pop
        # terms can only cancel, never reappear above the current leading term
    return Poly._make(a.nvars, q, F)


def try_divide(a: Poly, b: Poly) -> Poly | None:
    try:
        return divide_exact(a, b)
    except NotDivisible:
        return None


def arith(a: Poly, b, op: str) -> Poly:
    """Dispatch ``add``/``sub``/``mul``/``pow`` (``b`` an int for pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# univariate-in-one-variable views


def _split(p: Poly, v: int) -> dict:
    """View ``p`` as a polynomial in ``x_v``: ``{degree: coefficient Poly}``."""
    parts: dict = {}
    for e, c in p.terms.items():
        k = e[v]
        if k:
            e = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(k, {})[e] = c
    return {k: Poly._make(p.nvars, t, p.field) for k, t in parts.items()}


def _join(coeffs: dict, v: int, nvars: int, field: Field) -> Poly:
    out = {}
    for k, c in coeffs.items():
        for e, val in c.terms.items():
            if k:
                e = e[:v] + (e[v] + k,) + e[v + 1:]
            out[e] = val
    return Poly._make(nvars, out, field)


def content_in(p: Poly, v: int) -> Poly:
    """GCD of the coefficients of ``p`` viewed as a polynomial in ``x_v``."""
    coeffs = sorted(_split(p, v).values(), key=lambda c: (len(c.terms), c.total_degree()))
    g = coeffs[0].normalize()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd_nonzero(g, c)
    return g


# ---------------------------------------------------------------------------
# gcd

_MOD = (1 << 61) - 1


def _uni_image(p: Poly, v: int, point) -> list:
    """Evaluate all variables but ``x_v`` modulo ``_MOD``; dense list low->high."""
    deg = p.degree_in(v)
    out = [0] * (deg + 1)
    for e, c in p.terms.items():
        if type(c) is not int:
            c = c.numerator * pow(c.denominator, -1, _MOD)
        t = c
        for i, k in enumerate(e):
            if k and i != v:
                t = t * pow(point[i], k, _MOD)
        out[e[v]] = (out[e[v]] + t) % _MOD
    return out


def _uni_gcd_degree(a: list, b: list) -> int:
    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], -1, _MOD)
        while len(a) >= len(b):
            if a[-1]:
                f = a[-1] * inv % _MOD
                off = len(a) - len(b)
                for i, c in enumerate(b):
                    a[off + i] = (a[off + i] - f * c) % _MOD
            a.pop()
            trim(a)
        a, b = b, a
    return len(a) - 1


_rng = random.Random(0x5EED)
_POINTS: list = [_rng.randrange(2, _MOD) for _ in range(64)]


def _provably_coprime(a: Poly, b: Poly, variables) -> bool:
    """Sound modular test: True only if gcd(a, b) is certainly constant."""
    if a.field.p:
        return False
    n = a.nvars
    for attempt in range(2):
        point = _POINTS[attempt * 16: attempt * 16 + n] if n <= 16 else [
            _rng.randrange(2, _MOD) for _ in range(n)]
        ok = True
        for v in variables:
            ia = _uni_image(a, v, point)
            ib = _uni_image(b, v, point)
            if ia[-1] == 0 or ib[-1] == 0:
                ok = False
                break
            if _uni_gcd_degree(ia, ib) > 0:
                return False
        if ok:
            return True
    return False


def _prem(A: list, B: list, mul, sub):
    """Pseudo-remainder of dense coefficient lists (low -> high)."""
    r = list(A)
    dB = len(B) - 1
    lcB = B[-1]
    e = len(A) - len(B) + 1
    while len(r) - 1 >= dB and r:
        lr = r[-1]
        shift = len(r) - 1 - dB
        r = [mul(c, lcB) for c in r]
        for i, c in enumerate(B):
            r[shift + i] = sub(r[shift + i], mul(lr, c))
        r.pop()
        e -= 1
        while r and not r[-1]:
            r.pop()
    if e > 0 and r:
        f = lcB ** e
        r = [mul(c, f) for c in r]
    return r


def _subresultant_gcd(a: Poly, b: Poly, v: int) -> Poly:
    """GCD of ``a``, ``b`` (primitive in ``x_v``) via the subresultant PRS."""
    n, F = a.nvars, a.field
    zero = Poly.zero(n, F)

    def dense(p):
        parts = _split(p, v)
        d = max(parts)
        return [parts.get(k, zero) for k in range(d + 1)]

    A, B = dense(a), dense(b)
    if len(A) < len(B):
        A, B = B, A
    g = Poly.one(n, F)
    h = Poly.one(n, F)
    mul = Poly.__mul__
    sub = Poly.__sub__
    while True:
        delta = len(A) - len(B)
        R = _prem(A, B, mul, sub)
        if not R:
            break
        if len(R) == 1:
            return Poly.one(n, F)
        denom = g * h ** delta
        R = [divide_exact(c, denom) for c in R]
        A, B = B, R
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = divide_exact(g ** delta, h ** (delta - 1))
    res = _join({k: c for k, c in enumerate(B) if c}, v, n, F)
    return divide_exact(res, content_in(res, v)).normalize()


# modular gcd over the integers (characteristic 0)


def _modular_gcd(a: Poly, b: Poly) -> Poly | None:
    """GCD of two normalized integer polynomials by Brown's algorithm; None if it gives up."""
    from .modgcd import int_gcd
    variables = sorted(set(a.occurring_vars()) | set(b.occurring_vars()))

    def compress(p):
        return {tuple(e[v] for v in variables): c for e, c in p.terms.items()}

    h = int_gcd(compress(a), compress(b), len(variables))
    if h is None:
        return None
    out = {}
    for e, c in h.items():
        full = [0] * a.nvars
        for v, k in zip(variables, e):
            full[v] = k
        out[tuple(full)] = c
    return Poly._make(a.nvars, out, a.field).normalize()


def _dehomogenize_at(p: Poly, v: int) -> Poly:
    out = {}
    for e, c in p.terms.items():
        k = e[:v] + (0,) + e[v + 1:]
        out[k] = out.get(k, 0) + c
    return Poly._make(p.nvars, {e: c for e, c in out.items() if c}, p.field)


def _homogenize_at(p: Poly, v: int) -> Poly:
    d = p.total_degree()
    out = {}
    for e, c in p.terms.items():
        out[e[:v] + (d - sum(e),) + e[v + 1:]] = c
    return Poly._make(p.nvars, out, p.field)


def _gcd_nonzero(a: Poly, b: Poly) -> Poly:
    """Normalized gcd of two nonzero normalized-or-not polynomials."""
    a = a.normalize()
    b = b.normalize()
    if a == b:
        return a
    one = Poly.one(a.nvars, a.field)
    ma, mb = a.min_exps(), b.min_exps()
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(ma):
        a = a.div_monomial(ma)
    if any(mb):
        b = b.div_monomial(mb)
    mono = Poly._make(a.nvars, {m: 1}, a.field)
    if a.is_constant() or b.is_constant():
        return mono
    va, vb = set(a.occurring_vars()), set(b.occurring_vars())
    if va != vb:
        # a variable present in only one input: reduce to coefficients in it
        only = sorted(va - vb)
        if only:
            src, other = a, b
            v = only[0]
        else:
            src, other = b, a
            v = sorted(vb - va)[0]
        g = other
        for c in sorted(_split(src, v).values(), key=lambda c: len(c.terms)):
            g = _gcd_nonzero(g, c)
            if g.is_constant():
                return mono
        return (g * mono).normalize()
    if _provably_coprime(a, b, sorted(va)):
        return mono
    if len(va) > 1 and a.is_homogeneous() and b.is_homogeneous():
        # neither input is divisible by a variable here, so the gcd is the
        # homogenization of the gcd of the dehomogenizations
        v = max(sorted(va), key=lambda i: max(a.degree_in(i), b.degree_in(i)))
        g = _gcd_nonzero(_dehomogenize_at(a, v), _dehomogenize_at(b, v))
        return (_homogenize_at(g, v) * mono).normalize()
    if not a.field.p:
        g = _modular_gcd(a, b)
        if g is not None:
            return (g * mono).normalize()
    v = max(sorted(va), key=lambda i: max(a.degree_in(i), b.degree_in(i)))
    ca, cb = content_in(a, v), content_in(b, v)
    pa = divide_exact(a, ca) if not ca.is_constant() else a
    pb = divide_exact(b, cb) if not cb.is_constant() else b
    c = _gcd_nonzero(ca, cb) if not (ca.is_constant() or cb.is_constant()) else one
    g = _subresultant_gcd(pa, pb, v)
    return (mono * c * g).normalize()


def gcd(a: Poly, b: Poly) -> Poly:
    """Normalized greatest common divisor; ``gcd(0, b)`` is ``b`` normalized."""
    b = a._check(b)
    if a.is_zero():
        return b.normalize()
    if b.is_zero():
        return a.normalize()
    return _gcd_nonzero(a, b)


def gcd_many(polys: Iterable[Poly]) -> Poly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of no nonzero polynomials")
    polys.sort(key=lambda p: (len(p.terms), p.total_degree()))
    g = polys[0].normalize()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = _gcd_nonzero(g, p)
    return g


# ---------------------------------------------------------------------------
# multiplicity and squarefree decomposition


def multiplicity(h: Poly, f: Poly) -> int:
    """Largest ``m`` with ``h**m`` dividing ``f``."""
    if h.is_constant():
        raise ValueError("multiplicity of a constant is undefined")
    if f.is_zero():
        raise ValueError("multiplicity in the zero polynomial is undefined")
    m = 0
    while True:
        q = try_divide(f, h)
        if q is None:
            return m
        f = q
        m += 1


@dataclass(frozen=True)
class SqfDecomp:
    unit: object
    factors: tuple  # ((Poly, multiplicity), ...), multiplicities ascending

    def expand(self, nvars: int | None = None, field: Field | None = None) -> Poly:
        if self.factors:
            p0 = self.factors[0][0]
            nvars, field = p0.nvars, p0.field
        out = Poly.const(self.unit, nvars, field or QQ)
        for p, k in self.factors:
            out = out * p ** k
        return out

    def multiplicities(self) -> list[int]:
        return [k for _, k in self.factors]


def _yun(p: Poly, v: int) -> dict:
    """Yun's algorithm in ``x_v`` for ``p`` primitive in ``x_v`` (char 0)."""
    out: dict = {}
    dp = p.diff(v)
    a0 = gcd(p, dp)
    b = divide_exact(p, a0)
    c = divide_exact(dp, a0)
    d = c - b.diff(v)
    i = 1
    while not b.is_constant():
        a = gcd(b, d)
        if not a.is_constant():
            out[i] = a
        b = divide_exact(b, a)
        c = divide_exact(d, a)
        d = c - b.diff(v)
        i += 1
    return out


def _sqf_rec(f: Poly) -> dict:
    """Multiplicity -> squarefree factor, for normalized ``f`` without monomial content."""
    if f.is_constant():
        return {}
    v = f.occurring_vars()[0]
    c = content_in(f, v)
    if c.is_constant():
        return _yun(f, v)
    p = divide_exact(f, c).normalize()
    res = _sqf_rec(c)
    for k, a in _yun(p, v).items():
        res[k] = (res[k] * a).normalize() if k in res else a
    return res


def squarefree_decompose(f: Poly) -> SqfDecomp:
    """Yun-style squarefree decomposition ``f = unit * prod A_i**i``.

    One factor per multiplicity, ascending.  Characteristic p is refused.
    """
    if f.field.p:
        raise UnsupportedCharacteristic(
            f"squarefree decomposition is not supported in characteristic {f.field.p}")
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    unit, g = f.content_and_primitive()
    res: dict = {}
    m = g.min_exps()
    if any(m):
        g = g.div_monomial(m)
        for i, k in enumerate(m):
            if k:
                x = Poly.var(i, f.nvars, f.field)
                res[k] = res[k] * x if k in res else x
    for k, a in _sqf_rec(g).items():
        res[k] = res[k] * a if k in res else a
    factors = tuple((res[k].normalize(), k) for k in sorted(res))
    # normalization may flip signs; fix the unit so the product is exact
    check = Poly.one(f.nvars, f.field)
    for p, k in factors:
        check = check * p ** k
    s, _ = check.content_and_primitive()
    unit = f.field.div(unit, s) if s != 1 else unit
    return SqfDecomp(unit, factors)
