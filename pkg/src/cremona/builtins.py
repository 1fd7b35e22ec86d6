"""Registry of named maps: closed form plus generator word when one exists."""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable

from . import library as lib
from .birmap import equal_up_to_scalar
from .certify import matrix_word, nagata_alpha_word, nagata_beta_word, nagata_word
from .monomial import from_projective
from .words import SIGMA, GnWord, elementary_lin, eval_word


class UnknownBuiltin(KeyError):
    pass


@dataclass(frozen=True)
class Builtin:
    name: str
    make_map: Callable
    make_word: Callable | None
    nmin: int = 2
    nmax: int | None = None
    doc: str = ""
    params: tuple = ()

    def check_n(self, n: int):
        if n < self.nmin or (self.nmax is not None and n > self.nmax):
            hi = "" if self.nmax is None else f"..{self.nmax}"
            raise ValueError(f"{self.name} needs n in {self.nmin}{hi}")


def _fixed(n_fixed, fn):
    return lambda n, **kw: fn()


def _lin_word(letter_fn):
    return lambda n, **kw: GnWord(n, [letter_fn(n)])


def _xi_word(n, **kw):
    return lib.xi_word(n) if n % 2 == 0 else None


def _sigma_alpha_sigma(inverse):
    def make(n, **kw):
        a = elementary_lin(n, {(1, 0): 1, (2, 0): 1, (2, 1): 1})
        return GnWord(n, [SIGMA, a.inverse() if inverse else a, SIGMA])
    return make


_ENTRIES = [
    Builtin("identity", lambda n, **kw: lib.frac_map(n, []), lambda n, **kw: GnWord(n, []),
            doc="[x0 : ... : xn]"),
    Builtin("sigma", lambda n, **kw: lib.sigma_map(n), lambda n, **kw: GnWord(n, [SIGMA]),
            doc="[1/x0 : ... : 1/xn]"),
    Builtin("alpha1", lambda n, **kw: lib.frac_map(n, ["x0", "x0 - x1"]), _lin_word(lib.alpha1),
            doc="[x0 : x0 - x1 : x2 : ...]"),
    Builtin("alpha2", lambda n, **kw: lib.frac_map(n, ["x0", "x1", "x1 - x2"]),
            _lin_word(lib.alpha2), doc="[x0 : x1 : x1 - x2 : ...]"),
    Builtin("theta", lambda n, **kw: lib.theta_map(n), lambda n, **kw: lib.theta_word(n),
            doc="[x0 : x0^2/x1 : x2 : ...]"),
    Builtin("theta_alpha2", lambda n, **kw: lib.theta_alpha2_map(n),
            lambda n, **kw: lib.theta_alpha2_word(n), doc="[x0 : x1 : x0^2/x1 - x2 : ...]"),
    Builtin("tau_prime", lambda n, **kw: lib.tau_prime_map(n),
            lambda n, **kw: lib.tau_prime_word(n), doc="[x0 : x1 + x2^2/x0 : x2 : ...]"),
    Builtin("commutator", lambda n, **kw: lib.commutator_map(n),
            lambda n, **kw: lib.commutator_word(n), nmin=3,
            doc="(tau')^-1 alpha^-1 tau' alpha with alpha: x2 -> x2 + x3"),
    Builtin("tau", lambda n, **kw: lib.tau_map(n), lambda n, **kw: lib.tau_word(n), nmin=3,
            doc="[x0 : x1 + x2*x3/x0 : x2 : ...]"),
    Builtin("tau1", lambda n, **kw: lib.tau1_map(n), lambda n, **kw: lib.tau1_word(n), nmin=3,
            doc="[x0 : -x1 + x0*x2/x3 : x2 : ...]"),
    Builtin("tau2", lambda n, **kw: lib.tau2_map(n), lambda n, **kw: lib.tau2_word(n), nmin=3,
            doc="[x0 : x1 : -x2 + x1*x3/x0 : ...]"),
    Builtin("chi_alpha", lambda n, **kw: lib.frac_map(n, ["x0", "x1", "x3 - x2"]),
            _lin_word(lib.chi_alpha), nmin=3, doc="[x0 : x1 : x3 - x2 : x3 : ...]"),
    Builtin("chi0", lambda n, **kw: lib.chi0_map(n), lambda n, **kw: lib.chi0_word(n), nmin=3,
            doc="sigma alpha sigma tau2 sigma tau1 theta"),
    Builtin("tau_chi1", lambda n, **kw: lib.tau_chi1_map(n),
            lambda n, **kw: lib.tau_chi1_word(n), nmin=3, doc="[x0 : x1 + x0*x3/x2 : x2 : ...]"),
    Builtin("chi1", lambda n, **kw: lib.chi1_map(n), lambda n, **kw: lib.chi1_word(n), nmin=3,
            doc="[x0 : x0*x2/x3 : -x0*x3^3/(x1*x2^2) : x3 : ...]"),
    Builtin("chi", lambda n, **kw: lib.chi_map(n), lambda n, **kw: lib.chi_word(n), nmin=3,
            doc="[x0 : x0*x2/x3 : x0*x3^3/(x1*x2^2) : x3 : ...]"),
    Builtin("mu", lambda n, **kw: lib.mu_map(n), lambda n, **kw: lib.mu_word(n), nmin=3,
            doc="[x0 : x1 : x2*(x1/x0)^2 : x3 : ...]"),
    Builtin("mu_chi_phi4", lambda n, **kw: lib.mu_chi_phi4_map(n),
            lambda n, **kw: GnWord(n, [lib.mu_word(n), lib.chi_word(n), lib.phi_word(n, 4)]),
            nmin=3, doc="[x0 : x2*x0/x3 : x1*x0/x3 : x3 : ...]"),
    Builtin("nu", lambda n, **kw: lib.nu_map(n), lambda n, **kw: lib.nu_word(n), nmin=3,
            doc="[x0 : x1 : x2*x1/x0 : x3*x1/x0 : x4 : ...]"),
    Builtin("psi", lambda n, k=2, **kw: lib.psi_map(n, int(k)),
            lambda n, k=2, **kw: lib.psi_word(n, int(k)), nmin=3,
            doc="multiplies x2..x_{2k-1} by x1/x0", params=("k",)),
    Builtin("xi", lambda n, **kw: lib.xi_map(n), _xi_word,
            doc="[x0 : x1 : x2*x1/x0 : x3 : ...]; word only for even n"),
    Builtin("quad_involution", lambda n, **kw: lib.quad_involution_map(n), None, nmin=3,
            doc="[x1*x2 : x0*x1 : ... : x0*xn]"),
    Builtin("square_factor", lambda n, P1="x1", P2="x2*x3", **kw: lib.square_factor_map(n, P1, P2), None, nmin=3,
            doc="[x0*P1 + P2 : x0*x1 : ... : x0*xn]", params=("P1", "P2")),
    Builtin("phi_block", lambda n, m=2, **kw: lib.phi_block_map(n, int(m)),
            lambda n, m=2, **kw: matrix_word(
                from_projective(lib.phi_block_map(n, int(m))).matrix),
            nmin=3, doc="multiplies x2..x_m by x1/x0", params=("m",)),
    Builtin("asym_alpha", lambda n, **kw: lib.asym_alpha_map(n),
            lambda n, **kw: GnWord(n, [elementary_lin(n, {(1, 0): 1, (2, 0): 1, (2, 1): 1})]),
            doc="[x0 : x1 + x0 : x2 + x1 + x0 : x3 : ...]"),
    Builtin("asym_g", lambda n, **kw: lib.asym_g_map(n), _sigma_alpha_sigma(False),
            doc="sigma alpha sigma"),
    Builtin("asym_ginv", lambda n, **kw: lib.asym_ginv_map(n), _sigma_alpha_sigma(True),
            doc="sigma alpha^-1 sigma"),
    Builtin("dolgachev", _fixed(5, lib.dolgachev_map),
            lambda n, **kw: matrix_word(from_projective(lib.dolgachev_map()).matrix),
            nmin=5, nmax=5, doc="[x1*x2 : x0*x2 : x0*x1 : x0*x3 : x1*x4 : x2*x5]"),
    Builtin("kantor_psi", _fixed(3, lib.kantor_psi_map), None, nmin=3, nmax=3,
            doc="[x1 : x0 : x2*x1^2/x0^2 : x3*x1/x0]"),
    Builtin("nagata_alpha", _fixed(3, lib.nagata_alpha_map),
            lambda n, **kw: nagata_alpha_word(), nmin=3, nmax=3, doc="[w : x + y^2/z : y : z]"),
    Builtin("nagata_beta", _fixed(3, lib.nagata_beta_map),
            lambda n, **kw: nagata_beta_word(), nmin=3, nmax=3, doc="[w : x : y + x*z^2/w^2 : z]"),
    Builtin("nagata", _fixed(3, lib.nagata_map), lambda n, **kw: nagata_word(),
            nmin=3, nmax=3, doc="the Nagata automorphism of affine 3-space"),
]
_ENTRIES += [
    Builtin(f"phi{k}", (lambda k: lambda n, **kw: lib.phi_map(n, k))(k),
            (lambda k: lambda n, **kw: lib.phi_word(n, k))(k), nmin=3,
            doc=f"permutation conjugate of theta ({k})")
    for k in range(1, 6)
]

TABLE = MappingProxyType({b.name: b for b in _ENTRIES})


def names() -> list[str]:
    return sorted(TABLE)


def builtin(name: str, n: int, params: dict | None = None, table=None):
    """Return ``(map, word or None)`` for a named map."""
    table = TABLE if table is None else table
    if name not in table:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(sorted(table))}")
    b = table[name]
    b.check_n(n)
    kw = dict(params or {})
    bad = set(kw) - set(b.params)
    if bad:
        raise ValueError(f"{name} takes no parameter(s) {sorted(bad)}")
    f = b.make_map(n, **kw)
    w = b.make_word(n, **kw) if b.make_word else None
    return f, w


def check_builtin(name: str, n: int, params: dict | None = None, table=None) -> bool:
    """True iff the stored word (if any) evaluates to the stored closed form."""
    f, w = builtin(name, n, params, table)
    return w is None or equal_up_to_scalar(eval_word(w), f)
