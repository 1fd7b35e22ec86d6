"""Jacobian obstructions to membership in G_n = <sigma_n, Aut(P^n)>.

For odd n every element of G_n has Jacobian equal to a scalar times a
square.  An odd multiplicity in the squarefree decomposition of the
Jacobian therefore proves non-membership; the converse is not claimed.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .birmap import ProjMap, jacobian
from .fields import UnsupportedCharacteristic
from .parse import format_poly
from .poly import Poly, SqfDecomp, multiplicity, squarefree_decompose

OBSTRUCTED = "Obstructed"
NO_OBSTRUCTION = "NoObstruction"
INAPPLICABLE = "Inapplicable"


def kth_power_test(f: Poly, k: int):
    """Return ``(ok, h, decomposition)``; ok iff f is a scalar times h^k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if f.is_zero():
        raise ValueError("zero polynomial")
    dec = squarefree_decompose(f)
    if any(m % k for _, m in dec.factors):
        return False, None, dec
    h = Poly.one(f.nvars, f.field)
    for a, m in dec.factors:
        h = h * a ** (m // k)
    return True, h, dec


@dataclass
class ObstructionReport:
    verdict: str
    jacobian: Poly | None = None
    decomposition: SqfDecomp | None = None
    witness: tuple | None = None  # (factor, multiplicity)
    reason: str | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.verdict == OBSTRUCTED

    def to_json(self) -> dict:
        d = {"verdict": self.verdict}
        if self.witness is not None:
            d["witnessFactor"] = format_poly(self.witness[0])
            d["witnessMultiplicity"] = self.witness[1]
        if self.jacobian is not None:
            d["jacobian"] = format_poly(self.jacobian)
        if self.decomposition is not None:
            d["unit"] = str(self.decomposition.unit)
            d["factors"] = [{"poly": format_poly(a), "mult": m}
                            for a, m in self.decomposition.factors]
        if self.reason:
            d["reason"] = self.reason
        return d


def gn_obstruction(f: ProjMap) -> ObstructionReport:
    """Parity test of the Jacobian (odd n, characteristic 0)."""
    if f.field.p:
        return ObstructionReport(INAPPLICABLE, reason="positive characteristic")
    J = jacobian(f)
    if J.is_zero():
        return ObstructionReport(INAPPLICABLE, J, reason="zero Jacobian")
    dec = squarefree_decompose(J)
    if f.n % 2 == 0:
        return ObstructionReport(INAPPLICABLE, J, dec, reason="even dimension")
    odd = [(a, m) for a, m in dec.factors if m % 2]
    if odd:
        return ObstructionReport(OBSTRUCTED, J, dec, witness=odd[0])
    return ObstructionReport(NO_OBSTRUCTION, J, dec)


def discrepancy(f: ProjMap, h: Poly) -> int:
    """Multiplicity of h in Jac(f); equals the discrepancy in characteristic 0."""
    if f.field.p:
        raise UnsupportedCharacteristic("discrepancy via the Jacobian needs characteristic 0")
    if h.is_constant():
        raise ValueError("h must be nonconstant")
    if not h.is_homogeneous():
        raise ValueError("h must be homogeneous")
    return multiplicity(h, jacobian(f))


def contracted_report(f: ProjMap) -> SqfDecomp:
    """Squarefree decomposition of Jac(f): the locus where f is not a local isomorphism."""
    return squarefree_decompose(jacobian(f))
