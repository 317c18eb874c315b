"""Exact arithmetic in the quadratic field Q(sqrt z)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_Z_member, rational_sqrt, squarefree_class


class FieldMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuadField:
    z: int

    def __post_init__(self) -> None:
        if not isinstance(self.z, int) or not is_Z_member(self.z):
            raise ValueError(f"z={self.z!r} is not a square-free integer different from 0 and 1")

    def __call__(self, a: int | Fraction | str = 0, b: int | Fraction | str = 0) -> QuadElem:
        return QuadElem(Fraction(a), Fraction(b), self)

    @property
    def zero(self) -> QuadElem:
        return self(0, 0)

    @property
    def one(self) -> QuadElem:
        return self(1, 0)

    @property
    def sqrt_z(self) -> QuadElem:
        return self(0, 1)

    def __str__(self) -> str:
        return f"Q(√{self.z})"


@dataclass(frozen=True)
class QuadElem:
    """The element a + b√z of ``field``."""

    a: Fraction
    b: Fraction
    field: QuadField

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self) -> QuadElem:
        return QuadElem(-self.a, -self.b, self.field)

    def __sub__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other) -> QuadElem:
        return -(self - other)

    def __mul__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        z = self.field.z
        return QuadElem(
            self.a * o.a + self.b * o.b * z,
            self.a * o.b + self.b * o.a,
            self.field,
        )

    __rmul__ = __mul__

    def inv(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other) -> QuadElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def conjugate(self) -> QuadElem:
        return QuadElem(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.z * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return format_quad(self.a, self.b, self.field.z)


def format_quad(a: Fraction, b: Fraction, z: int) -> str:
    """Render ``a+b√z`` with exact rationals, e.g. ``1/2-3√-1``."""
    if b == 0:
        return str(a)
    root = f"√{z}"
    coef = "" if abs(b) == 1 else str(abs(b))
    if a == 0:
        return ("-" if b < 0 else "") + coef + root
    return f"{a}{'-' if b < 0 else '+'}{coef}{root}"


def add(x: QuadElem, y: QuadElem) -> QuadElem:
    return x + y


def sub(x: QuadElem, y: QuadElem) -> QuadElem:
    return x - y


def mul(x: QuadElem, y: QuadElem) -> QuadElem:
    return x * y


def inv(x: QuadElem) -> QuadElem:
    return x.inv()


def conjugate(x: QuadElem) -> QuadElem:
    return x.conjugate()


def norm(x: QuadElem) -> Fraction:
    return x.norm()


class SquareClass(enum.Enum):
    TRIVIAL = "TrivialClass"
    Z = "ZClass"
    NONSQUARE = "NonSquare"


def square_class_in_ell(q: int | Fraction, ell: QuadField) -> SquareClass:
    """Locate ``q`` in Q* ∩ ell^2 = Q*^2 ∪ z Q*^2, or report it outside."""
    s = squarefree_class(q)
    if s == 1:
        return SquareClass.TRIVIAL
    if s == ell.z:
        return SquareClass.Z
    return SquareClass.NONSQUARE


def sqrt_in_ell(q: int | Fraction, ell: QuadField) -> QuadElem | None:
    cls = square_class_in_ell(q, ell)
    if cls is SquareClass.TRIVIAL:
        return ell(rational_sqrt(q), 0)
    if cls is SquareClass.Z:
        return ell(0, rational_sqrt(Fraction(q) / ell.z))
    return None
