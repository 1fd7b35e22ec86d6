"""Words in sigma_n and linear automorphisms.

A word ``[L1, L2, ..., Lk]`` evaluates to ``L1 o L2 o ... o Lk`` (the last
letter acts first).  Letters are :data:`SIGMA`, :class:`Lin` (an invertible
matrix, component i = sum_j M[i][j] x_j) or a nested :class:`GnWord`; nesting
keeps large certificates compact and lets evaluation reuse shared blocks.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

from .birmap import (DegreeBoundExceeded, MapError, ProjMap, compose, identity,
                     linear_map, matrix_inverse, sigma)
from .fields import QQ, Field, UnsupportedCharacteristic

MAX_DEGREE = 64


class _Sigma:
    __slots__ = ()

    def inverse(self):
        return self

    def __repr__(self):
        return "SIGMA"

    def __reduce__(self):
        return "SIGMA"


SIGMA = _Sigma()


def _frac(x) -> Fraction | int:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Lin:
    """An invertible linear letter with rational entries."""

    __slots__ = ("matrix", "_hash")

    def __init__(self, matrix):
        self.matrix = tuple(tuple(_frac(x) for x in row) for row in matrix)
        m = len(self.matrix)
        if any(len(r) != m for r in self.matrix):
            raise MapError("linear letter needs a square matrix")
        self._hash = hash(self.matrix)

    def __eq__(self, other):
        return isinstance(other, Lin) and other.matrix == self.matrix

    def __hash__(self):
        return self._hash

    def inverse(self) -> "Lin":
        return Lin(matrix_inverse(self.matrix, QQ))

    def __matmul__(self, other: "Lin") -> "Lin":
        B = other.matrix
        return Lin([[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(len(B))]
                    for row in self.matrix])

    def __repr__(self):
        return f"Lin({[list(map(str, r)) for r in self.matrix]})"


class GnWord:
    """An immutable word; letters are SIGMA, Lin or nested GnWord blocks."""

    __slots__ = ("n", "letters", "name", "_hash")

    def __init__(self, n: int, letters=(), name: str | None = None):
        self.n = n
        flat = []
        for L in letters:
            if isinstance(L, GnWord):
                if L.n != n:
                    raise MapError("nested word has a different dimension")
                if not L.letters:
                    continue
            elif isinstance(L, Lin):
                if len(L.matrix) != n + 1:
                    raise MapError("linear letter has the wrong size")
            elif L is not SIGMA:
                raise TypeError(f"bad letter {L!r}")
            flat.append(L)
        self.letters = tuple(flat)
        self.name = name
        self._hash = hash((n, self.letters))

    def __eq__(self, other):
        return isinstance(other, GnWord) and (self.n, self.letters) == (other.n, other.letters)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GnWord(n={self.n}, {self.name or len(self.letters)})"

    def __add__(self, other: "GnWord") -> "GnWord":
        return GnWord(self.n, self.letters + other.letters)

    def inverse(self) -> "GnWord":
        name = None if self.name is None else f"{self.name}^-1"
        return GnWord(self.n, [L.inverse() for L in reversed(self.letters)], name)

    def flat(self) -> list:
        """Expand nested blocks into SIGMA/Lin letters, merging adjacent Lins."""
        out: list = []
        for L in self.letters:
            items = L.flat() if isinstance(L, GnWord) else [L]
            for x in items:
                if isinstance(x, Lin) and out and isinstance(out[-1], Lin):
                    out[-1] = out[-1] @ x
                elif x is SIGMA and out and out[-1] is SIGMA:
                    out.pop()
                else:
                    out.append(x)
        return [x for x in out if not (isinstance(x, Lin) and _is_identity(x.matrix))]

    def length(self) -> int:
        return len(self.flat())

    def sigma_count(self) -> int:
        return sum(1 for x in self.flat() if x is SIGMA)

    def to_json(self) -> dict:
        letters = []
        for x in self.flat():
            if x is SIGMA:
                letters.append({"sigma": True})
            else:
                letters.append({"lin": [[str(c) for c in r] for r in x.matrix]})
        return {"n": self.n, "letters": letters}

    @classmethod
    def from_json(cls, obj) -> "GnWord":
        if isinstance(obj, str):
            obj = json.loads(obj)
        n = int(obj["n"])
        letters = []
        for d in obj["letters"]:
            if d.get("sigma"):
                letters.append(SIGMA)
            elif "lin" in d:
                letters.append(Lin([[Fraction(c) for c in r] for r in d["lin"]]))
            else:
                raise ValueError(f"bad word letter {d!r}")
        return cls(n, letters)


def _is_identity(M) -> bool:
    return all(x == (1 if i == j else 0) for i, r in enumerate(M) for j, x in enumerate(r))


def word(n: int, *letters, name=None) -> GnWord:
    return GnWord(n, letters, name)


def lin(matrix) -> Lin:
    return Lin(matrix)


# ---------------------------------------------------------------------------
# evaluation


def _lin_map(L: Lin, field: Field) -> ProjMap:
    if field.p == 2:
        raise UnsupportedCharacteristic("words use coefficients in Z[1/2]")
    return linear_map(L.matrix, field)


@lru_cache(maxsize=4096)
def _eval(w: GnWord, field: Field, max_degree: int) -> ProjMap:
    acc = None
    pending = None  # product of consecutive linear letters

    def push(f):
        nonlocal acc
        acc = f if acc is None else compose(acc, f)
        if acc.degree > max_degree:
            raise DegreeBoundExceeded(
                f"intermediate degree {acc.degree} exceeds the bound {max_degree}")

    for L in w.letters:
        if isinstance(L, Lin):
            pending = L if pending is None else pending @ L
            continue
        if pending is not None:
            push(_lin_map(pending, field))
            pending = None
        push(sigma(w.n, field) if L is SIGMA else _eval(L, field, max_degree))
    if pending is not None:
        push(_lin_map(pending, field))
    return identity(w.n, field) if acc is None else acc


def eval_word(w: GnWord, field: Field = QQ, max_degree: int = MAX_DEGREE) -> ProjMap:
    """Compose the letters (last letter first), cancelling at every step."""
    return _eval(w, field, max_degree)


# ---------------------------------------------------------------------------
# small linear letters


def perm_lin(perm, n: int) -> Lin:
    """Component i of the image is x_{perm[i]}."""
    return Lin([[1 if j == perm[i] else 0 for j in range(n + 1)] for i in range(n + 1)])


def diag_lin(entries) -> Lin:
    m = len(entries)
    return Lin([[entries[i] if i == j else 0 for j in range(m)] for i in range(m)])


def elementary_lin(n: int, entries: dict) -> Lin:
    """Identity plus the given {(i, j): c} entries (with diagonal overrides)."""
    M = [[Fraction(int(i == j)) for j in range(n + 1)] for i in range(n + 1)]
    for (i, j), c in entries.items():
        M[i][j] = Fraction(c)
    return Lin(M)


def conj_perm(w: GnWord, perm) -> GnWord:
    """P o w o P^-1 where P is the coordinate permutation with P(x)_i = x_{perm[i]}.

    If w sends x_a to something involving x_b, the conjugate does the same
    with the roles of the coordinates relabelled by ``perm``.
    """
    inv = [0] * len(perm)
    for k, v in enumerate(perm):
        inv[v] = k
    P = perm_lin(inv, w.n)
    return GnWord(w.n, [P, w, P.inverse()])
