"""Dense modular GCD over the integers (Brown's algorithm).

Polynomials are dicts ``{exponent tuple: int}`` over a list of active
variables.  Images modulo 61-bit primes are computed by evaluation and
Newton interpolation in the last variable, recursively, down to
univariate Euclid.  Images are combined by Chinese remaindering, and the
result is only returned after an exact trial division over the integers,
so a bad prime or an unlucky evaluation point can cost time but never
correctness.  Interpolation stops early once an extra point leaves the
interpolant unchanged; the final division catches the rare false stop.
"""
from __future__ import annotations

from math import gcd as igcd

_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_list(count: int) -> list:
    out, n = [], (1 << 61) - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return out


PRIMES = _prime_list(40)


# ---------------------------------------------------------------------------
# univariate arithmetic mod p on coefficient lists (low -> high)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ueval(a: list, r: int, p: int) -> int:
    v = 0
    for c in reversed(a):
        v = (v * r + c) % p
    return v


def _umonic(a: list, p: int) -> list:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _ugcd(a: list, b: list, p: int) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % p
            if f:
                off = len(a) - 1 - db
                for i in range(db):
                    a[off + i] = (a[off + i] - f * b[i]) % p
            a.pop()
            _trim(a)
        a, b = b, a
    return _umonic(a, p)


def _udivexact(a: list, b: list, p: int) -> list:
    a = list(a)
    db = len(b) - 1
    if db == 0:
        inv = pow(b[0], -1, p)
        return [c * inv % p for c in a]
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        f = a[k] * inv % p
        q[k - db] = f
        if f:
            off = k - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - f * b[i]) % p
    return q


def _umul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


# ---------------------------------------------------------------------------
# multivariate gcd mod p


def _split_last(P: dict) -> dict:
    """View P as a polynomial in the leading variables over Z_p[last]."""
    out: dict = {}
    for e, c in P.items():
        x, k = e[:-1], e[-1]
        row = out.setdefault(x, [])
        if len(row) <= k:
            row.extend([0] * (k + 1 - len(row)))
        row[k] = c
    return out


def _pgcd(P: dict, Q: dict, k: int, p: int) -> dict:
    """Monic (lex) gcd of nonzero P, Q in Z_p[x_1..x_k]."""
    if k == 0:
        return {(): 1}
    if k == 1:
        a = [0] * (max(e[0] for e in P) + 1)
        for e, c in P.items():
            a[e[0]] = c
        b = [0] * (max(e[0] for e in Q) + 1)
        for e, c in Q.items():
            b[e[0]] = c
        g = _ugcd(a, b, p)
        return {(i,): c for i, c in enumerate(g) if c}
    A, B = _split_last(P), _split_last(Q)
    ca = cb = []
    for v in A.values():
        ca = _ugcd(ca, v, p)
        if len(ca) == 1:
            break
    for v in B.values():
        cb = _ugcd(cb, v, p)
        if len(cb) == 1:
            break
    c = _ugcd(ca, cb, p)
    if len(ca) > 1:
        A = {x: _udivexact(v, ca, p) for x, v in A.items()}
    if len(cb) > 1:
        B = {x: _udivexact(v, cb, p) for x, v in B.items()}
    lca, lcb = A[max(A)], B[max(B)]
    gam = _ugcd(lca, lcb, p)
    bound = min(max(len(v) for v in A.values()), max(len(v) for v in B.values())) - 1
    bound += len(gam) - 1
    H = None
    LM = None
    q = [1]
    npts = 0
    stable = 0
    r = 0
    while True:
        r += 1
        if r >= p:
            raise ArithmeticError("ran out of evaluation points")
        gr = _ueval(gam, r, p)
        if not gr or not _ueval(lca, r, p) or not _ueval(lcb, r, p):
            continue
        Ar = {x: y for x, v in A.items() if (y := _ueval(v, r, p))}
        Br = {x: y for x, v in B.items() if (y := _ueval(v, r, p))}
        g = _pgcd(Ar, Br, k - 1, p)
        lm = max(g)
        if not any(lm):
            # the primitive parts are coprime
            H = {(0,) * (k - 1): [1]}
            break
        if LM is not None and lm > LM:
            continue  # unlucky point
        if H is None or lm < LM:
            H = {x: [v * gr % p] for x, v in g.items()}
            LM, q, npts, stable = lm, [(-r) % p, 1], 1, 0
            continue
        qr_inv = pow(_ueval(q, r, p), -1, p)
        changed = False
        for x in set(H) | set(g):
            hv = H.get(x, [])
            d = (g.get(x, 0) * gr - _ueval(hv, r, p)) * qr_inv % p
            if d:
                changed = True
                hv = hv + [0] * (len(q) - len(hv))
                H[x] = [(a + d * b) % p for a, b in zip(hv, q)]
        q = _umul(q, [(-r) % p, 1], p)
        npts += 1
        stable = 0 if changed else stable + 1
        if npts > bound or stable >= 2:
            break
    cont = []
    for v in H.values():
        cont = _ugcd(cont, v, p)
        if len(cont) == 1:
            break
    out = {}
    for x, v in H.items():
        if len(cont) > 1:
            v = _udivexact(v, cont, p)
        v = _umul(v, c, p) if len(c) > 1 else v
        for i, coef in enumerate(v):
            if coef:
                out[x + (i,)] = coef
    lc = out[max(out)]
    if lc != 1:
        inv = pow(lc, -1, p)
        out = {e: v * inv % p for e, v in out.items()}
    return out


# ---------------------------------------------------------------------------
# integer gcd via CRT


def _content(P: dict) -> int:
    g = 0
    for c in P.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _divides(D: dict, P: dict) -> bool:
    """Exact division test over the integers (dense in the lex order)."""
    P = dict(P)
    ld = max(D)
    lcd = D[ld]
    while P:
        lp = max(P)
        if any(a < b for a, b in zip(lp, ld)):
            return False
        c, rem = divmod(P[lp], lcd)
        if rem:
            return False
        shift = tuple(a - b for a, b in zip(lp, ld))
        for e, v in D.items():
            t = tuple(a + b for a, b in zip(e, shift))
            nv = P.get(t, 0) - c * v
            if nv:
                P[t] = nv
            else:
                P.pop(t, None)
    return True


def int_gcd(P: dict, Q: dict, k: int, max_primes: int = len(PRIMES)):
    """GCD (positive lex leading coefficient) of nonzero integer polynomials.

    Returns None if ``max_primes`` primes did not suffice; the caller then
    falls back to another method.
    """
    cp, cq = _content(P), _content(Q)
    c = igcd(cp, cq)
    if cp != 1:
        P = {e: v // cp for e, v in P.items()}
    if cq != 1:
        Q = {e: v // cq for e, v in Q.items()}
    if k == 0:
        return {(): c}
    lcp, lcq = P[max(P)], Q[max(Q)]
    gam = igcd(lcp, lcq)
    H = None
    LM = None
    M = 1
    last = None
    for p in PRIMES[:max_primes]:
        if lcp % p == 0 or lcq % p == 0:
            continue
        Pp = {e: v % p for e, v in P.items() if v % p}
        Qp = {e: v % p for e, v in Q.items() if v % p}
        g = _pgcd(Pp, Qp, k, p)
        lm = max(g)
        if not any(lm):
            return {(0,) * k: c}
        if LM is not None and lm > LM:
            continue
        gp = gam % p
        g = {e: v * gp % p for e, v in g.items()}
        if H is None or lm < LM:
            H, LM, M, last = g, lm, p, None
        else:
            # CRT: x = H mod M, x = g mod p
            inv = pow(M, -1, p)
            newH = {}
            for e in set(H) | set(g):
                a = H.get(e, 0)
                t = (g.get(e, 0) - a) * inv % p
                v = a + M * t
                if v:
                    newH[e] = v
            H, M = newH, M * p
        half = M // 2
        sym = {e: (v - M if v > half else v) for e, v in H.items()}
        sym = {e: v for e, v in sym.items() if v}
        if sym == last or M > 1 << 4000:
            cc = _content(sym)
            cand = {e: v // cc for e, v in sym.items()}
            if cand[max(cand)] < 0:
                cand = {e: -v for e, v in cand.items()}
            if _divides(cand, P) and _divides(cand, Q):
                return {e: v * c for e, v in cand.items()} if c != 1 else cand
        last = sym
    return None
