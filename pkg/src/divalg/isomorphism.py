"""Isomorphism of A(ell, c) and A(ell, d).

A(ell, c) ≅ A(ell, d) iff c = (d1, x^2 d2, n(x) d3) for some nonzero x in ell.
When d2 != 0, x^2 must be rational, which forces x ∈ Q* (n(x) = x^2) or
x ∈ Q*·√z (n(x) = -x^2). When d2 = 0 only n(x) matters and it ranges over the
whole norm group.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Triple
from .arith import rational_sqrt, squarefree_class
from .classification import solve_norm_equation
from .quadfield import QuadElem, QuadField, SquareClass, square_class_in_ell


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    witness: QuadElem | None = None

    def __bool__(self) -> bool:
        return self.isomorphic

    def to_json(self) -> dict:
        return {"isomorphic": self.isomorphic, "witness": None if self.witness is None else str(self.witness)}


NOT_ISOMORPHIC = IsoVerdict(False)


def apply_witness(d: Triple, x: QuadElem) -> Triple:
    if x.is_zero():
        raise ValueError("witness must be nonzero")
    sq = x * x
    if d.c2 != 0 and not sq.is_rational():
        raise ValueError(f"x={x} has irrational square; (d1, x^2 d2, n(x) d3) is not a rational triple")
    return Triple(d.c1, sq.a * d.c2, x.norm() * d.c3)


def _witness(z: int, c: Triple, d: Triple) -> QuadElem | None:
    ell = QuadField(z)
    if c.c1 != d.c1:
        return None
    if d.c2 != 0:
        if c.c2 == 0:
            return None
        q = c.c2 / d.c2
        cls = square_class_in_ell(q, ell)
        if cls is SquareClass.TRIVIAL and c.c3 == q * d.c3:
            return ell(rational_sqrt(q), 0)
        if cls is SquareClass.Z and c.c3 == -q * d.c3:
            return ell(0, rational_sqrt(q / z))
        return None
    if c.c2 != 0:
        return None
    if d.c3 == 0:
        return ell.one if c.c3 == 0 else None
    if c.c3 == 0:
        return None
    q = c.c3 / d.c3
    w = squarefree_class(q)
    rep = solve_norm_equation(z, w)
    if rep is None:
        return None
    scale = rational_sqrt(q / w)
    return ell(rep[0] * scale, rep[1] * scale)


def are_isomorphic(z: int, c: Triple, d: Triple) -> IsoVerdict:
    """Decide A(ell, c) ≅ A(ell, d) for ell = Q(√z), with a witness when they are."""
    x = _witness(z, c, d)
    if x is None:
        return NOT_ISOMORPHIC
    if apply_witness(d, x) != c:
        raise AssertionError(f"witness {x} does not map {d} to {c}")
    return IsoVerdict(True, x)
