"""The four-dimensional algebras A(ell, c) on ell^2 and their structure.

Multiplication is ``(x, y)·(u, w) = M_c(x, y) (u, w)^T`` with

    M_c(x, y) = [[x, c2*y + c3*conj(y)],
                 [y, (1 - c1)*x + c1*conj(x)]]

Coordinates are taken in the basis e1=(1,0), e2=(√z,0), e3=(0,1), e4=(0,√z).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .arith import as_rational
from .linalg import det, nullspace, rank
from .quadfield import QuadElem, QuadField

DIM = 4


@dataclass(frozen=True)
class Triple:
    c1: Fraction
    c2: Fraction
    c3: Fraction

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, c1, c2, c3) -> Triple:
        return cls(as_rational(c1), as_rational(c2), as_rational(c3))

    @classmethod
    def parse(cls, text: str) -> Triple:
        """Parse ``"p/q,p/q,p/q"``; decimal notation is rejected."""
        parts = [p for p in text.replace(" ", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated rationals, got {text!r}")
        return cls(*(as_rational(p) for p in parts))

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))

    def as_strings(self) -> list[str]:
        return [str(c) for c in self]

    def __str__(self) -> str:
        return "(" + ", ".join(self.as_strings()) + ")"


@dataclass(frozen=True)
class AlgebraSpec:
    field: QuadField
    c: Triple

    @classmethod
    def of(cls, z: int, c) -> AlgebraSpec:
        if not isinstance(c, Triple):
            c = Triple.of(*c)
        return cls(QuadField(z), c)

    @property
    def z(self) -> int:
        return self.field.z

    def element(self, x: QuadElem | Sequence, y: QuadElem | Sequence) -> AlgebraElement:
        if not isinstance(x, QuadElem):
            x = self.field(*x)
        if not isinstance(y, QuadElem):
            y = self.field(*y)
        return AlgebraElement(x, y, self)

    def from_coords(self, v: Sequence) -> AlgebraElement:
        return AlgebraElement(self.field(v[0], v[1]), self.field(v[2], v[3]), self)

    def basis(self) -> list[AlgebraElement]:
        return [self.from_coords([int(i == j) for j in range(DIM)]) for i in range(DIM)]

    @property
    def one(self) -> AlgebraElement:
        return self.from_coords([1, 0, 0, 0])

    @cached_property
    def structure_constants(self) -> list[list[list[Fraction]]]:
        return structure_constants(self)


@dataclass(frozen=True)
class AlgebraElement:
    x: QuadElem
    y: QuadElem
    spec: AlgebraSpec

    def __post_init__(self) -> None:
        if self.x.field != self.spec.field or self.y.field != self.spec.field:
            raise ValueError("coordinates must lie in the algebra's quadratic field")

    def coords(self) -> list[Fraction]:
        return [self.x.a, self.x.b, self.y.a, self.y.b]

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return multiply(self, other)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same_spec(self, other)
        return AlgebraElement(self.x + other.x, self.y + other.y, self.spec)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        _same_spec(self, other)
        return AlgebraElement(self.x - other.x, self.y - other.y, self.spec)

    def scale(self, q) -> AlgebraElement:
        return AlgebraElement(self.x * Fraction(q), self.y * Fraction(q), self.spec)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def _same_spec(u: AlgebraElement, v: AlgebraElement) -> None:
    if u.spec != v.spec:
        raise ValueError("elements belong to different algebras")


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    _same_spec(u, v)
    c1, c2, c3 = u.spec.c
    x, y = u.x, u.y
    top_right = y * c2 + y.conjugate() * c3
    bottom_right = x * (1 - c1) + x.conjugate() * c1
    return AlgebraElement(x * v.x + top_right * v.y, y * v.x + bottom_right * v.y, u.spec)


def structure_constants(spec: AlgebraSpec) -> list[list[list[Fraction]]]:
    """``T[i][j][k]`` is the e_k coefficient of e_i·e_j."""
    basis = spec.basis()
    return [[multiply(ei, ej).coords() for ej in basis] for ei in basis]


def multiply_via_constants(spec: AlgebraSpec, u: Sequence, v: Sequence) -> list[Fraction]:
    t = spec.structure_constants
    out = [Fraction(0)] * DIM
    for i, j in product(range(DIM), repeat=2):
        if u[i] and v[j]:
            coef = u[i] * v[j]
            for k in range(DIM):
                out[k] += coef * t[i][j][k]
    return out


def structure_constants_json(spec: AlgebraSpec) -> str:
    t = spec.structure_constants
    return json.dumps([[[f"{v.numerator}/{v.denominator}" for v in row] for row in plane] for plane in t])


def _assoc_rows(t, position: str) -> list[list[Fraction]]:
    """Linear conditions on n for (ab)c = a(bc) with n in the given slot over basis a, b."""
    rows = []
    rng = range(DIM)
    for i, j, m in product(rng, rng, rng):
        row = []
        for l in rng:
            if position == "right":      # (e_i e_j) n - e_i (e_j n)
                lhs = sum(t[i][j][k] * t[k][l][m] for k in rng)
                rhs = sum(t[j][l][k] * t[i][k][m] for k in rng)
            elif position == "middle":   # (e_i n) e_j - e_i (n e_j)
                lhs = sum(t[i][l][k] * t[k][j][m] for k in rng)
                rhs = sum(t[l][j][k] * t[i][k][m] for k in rng)
            else:                        # (n e_i) e_j - n (e_i e_j)
                lhs = sum(t[l][i][k] * t[k][j][m] for k in rng)
                rhs = sum(t[i][j][k] * t[l][k][m] for k in rng)
            row.append(lhs - rhs)
        rows.append(row)
    return rows


def _commutant_rows(t) -> list[list[Fraction]]:
    return [[t[l][i][m] - t[i][l][m] for l in range(DIM)] for i in range(DIM) for m in range(DIM)]


def right_nucleus_basis(spec: AlgebraSpec) -> list[AlgebraElement]:
    rows = _assoc_rows(spec.structure_constants, "right")
    return [spec.from_coords(v) for v in nullspace(rows, DIM)]


def left_nucleus_basis(spec: AlgebraSpec) -> list[AlgebraElement]:
    rows = _assoc_rows(spec.structure_constants, "left")
    return [spec.from_coords(v) for v in nullspace(rows, DIM)]


def middle_nucleus_basis(spec: AlgebraSpec) -> list[AlgebraElement]:
    rows = _assoc_rows(spec.structure_constants, "middle")
    return [spec.from_coords(v) for v in nullspace(rows, DIM)]


def center_basis(spec: AlgebraSpec) -> list[AlgebraElement]:
    """Elements commuting with everything and lying in all three nuclei."""
    t = spec.structure_constants
    rows = _commutant_rows(t)
    for pos in ("left", "middle", "right"):
        rows += _assoc_rows(t, pos)
    return [spec.from_coords(v) for v in nullspace(rows, DIM)]


def is_associative(spec: AlgebraSpec) -> bool:
    t = spec.structure_constants
    return all(v == 0 for row in _assoc_rows(t, "right") for v in row)


def is_commutative(spec: AlgebraSpec) -> bool:
    t = spec.structure_constants
    return all(t[i][j] == t[j][i] for i in range(DIM) for j in range(DIM))


class Kind(enum.Enum):
    FIELD = "FieldK"
    SKEW = "SkewS"
    NONASSOC = "NonAssocN"


def classify_triple(spec_or_c: AlgebraSpec | Triple) -> Kind:
    """Syntactic K/S/N test on the triple.

    Only meaningful for admissible triples; for inadmissible ones the answer
    says nothing about the algebra.
    """
    c = spec_or_c.c if isinstance(spec_or_c, AlgebraSpec) else spec_or_c
    if c.c1 == 0 and c.c3 == 0:
        return Kind.FIELD
    if c.c1 == 1 and c.c2 == 0:
        return Kind.SKEW
    return Kind.NONASSOC


def _apply(phi: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((Fraction(phi[r][k]) * v[k] for k in range(DIM)), Fraction(0)) for r in range(DIM)]


def is_algebra_automorphism(spec: AlgebraSpec, phi: Sequence[Sequence]) -> bool:
    """``phi[r][k]`` is the r-th coordinate of phi(e_k)."""
    phi = [[Fraction(v) for v in row] for row in phi]
    if rank(phi, DIM) != DIM:
        return False
    images = [[phi[r][k] for r in range(DIM)] for k in range(DIM)]
    if images[0] != [1, 0, 0, 0]:
        return False
    t = spec.structure_constants
    for i, j in product(range(DIM), repeat=2):
        if multiply_via_constants(spec, images[i], images[j]) != _apply(phi, t[i][j]):
            return False
    return True


def klein_candidates() -> dict[str, list[list[Fraction]]]:
    """The maps (x,y)->(x,y), (x,-y), (conj x, conj y), (conj x, -conj y)."""
    diag = {
        "id": (1, 1, 1, 1),
        "neg_y": (1, 1, -1, -1),
        "conj": (1, -1, 1, -1),
        "conj_neg_y": (1, -1, -1, 1),
    }
    return {
        name: [[Fraction(d[r]) if r == k else Fraction(0) for k in range(DIM)] for r in range(DIM)]
        for name, d in diag.items()
    }


def left_mult_matrix(spec: AlgebraSpec, u: AlgebraElement) -> list[list[Fraction]]:
    cols = [multiply(u, e).coords() for e in spec.basis()]
    return [[cols[k][r] for k in range(DIM)] for r in range(DIM)]


def left_mult_det(spec: AlgebraSpec, u: AlgebraElement) -> Fraction:
    return det(left_mult_matrix(spec, u))


def right_mult_det(spec: AlgebraSpec, u: AlgebraElement) -> Fraction:
    cols = [multiply(e, u).coords() for e in spec.basis()]
    return det([[cols[k][r] for k in range(DIM)] for r in range(DIM)])
