"""Admissibility of triples: c is admissible iff A(ell, c) is a division algebra.

Writing x = x1 + x2√z and y = y1 + y2√z, a left zero divisor (x, y) exists
exactly when

    x1^2 + z(1-2c1) x2^2 - (c2+c3) y1^2 + z(c3-c2) y2^2 = 0
    (1-c1) x1 x2 = c2 y1 y2

has a nontrivial rational (equivalently primitive integral) solution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable

import numpy as np

from .algebra import Triple
from .arith import factor, in_P3, in_Q2, is_squarefree, lcm_of_denominators
from .quadfield import QuadField, SquareClass, square_class_in_ell

DEFAULT_BOUND = 50

Quad = tuple[int, int, int, int]

# sign flips (e1, e2, e3, e4) with e1*e2 == e3*e4 preserve both equations
_SIGN_FLIPS = [s for s in product((1, -1), repeat=4) if s[0] * s[1] == s[2] * s[3]]


@dataclass(frozen=True)
class DivisionSystem:
    z: int
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    F: Fraction

    @property
    def quadratic(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.A, self.B, self.C, self.D)

    def evaluate(self, sol: Iterable) -> tuple[Fraction, Fraction]:
        """Residuals (quadratic, bilinear) at ``sol``; both vanish on a solution."""
        x1, x2, y1, y2 = (Fraction(v) for v in sol)
        quad = self.A * x1 * x1 + self.B * x2 * x2 + self.C * y1 * y1 + self.D * y2 * y2
        bil = self.E * x1 * x2 - self.F * y1 * y2
        return quad, bil

    def integer_coefficients(self) -> tuple[tuple[int, int, int, int], tuple[int, int]]:
        """Both equations scaled separately to integer coefficients."""
        l1 = lcm_of_denominators(self.quadratic)
        l2 = lcm_of_denominators((self.E, self.F))
        quad = tuple(int(v * l1) for v in self.quadratic)
        return quad, (int(self.E * l2), int(self.F * l2))


def system_of(z: int, c: Triple) -> DivisionSystem:
    c1, c2, c3 = c
    return DivisionSystem(
        z=z,
        A=Fraction(1),
        B=z * (1 - 2 * c1),
        C=-(c2 + c3),
        D=z * (c3 - c2),
        E=1 - c1,
        F=c2,
    )


def is_primitive(sol: Iterable[int]) -> bool:
    g = 0
    for v in sol:
        g = gcd(g, v)
    return g == 1


def _normalize(sol: Quad) -> Quad:
    g = 0
    for v in sol:
        g = gcd(g, v)
    sol = tuple(v // g for v in sol)
    lead = next(v for v in sol if v)
    return sol if lead > 0 else tuple(-v for v in sol)


def witness_order(sol: Quad) -> tuple:
    """Ranking of witnesses: max-norm shell, then 1-norm, then larger coordinates first."""
    return (max(abs(v) for v in sol), sum(abs(v) for v in sol), tuple(-v for v in sol))


def _scan_box(quad: tuple[int, ...], bil: tuple[int, int], b: int) -> list[Quad]:
    """All solutions with |coords| <= b and y1, y2 >= 0 (one per sign orbit or more)."""
    a1, a2, a3, a4 = quad
    e, f = bil
    biggest = max(map(abs, (a1, a2, a3, a4, e, f))) or 1
    dtype = np.int64 if biggest * 8 * (b + 1) ** 2 < 2**62 else object

    x2 = np.arange(-b, b + 1, dtype=dtype).reshape(-1, 1, 1)
    y1 = np.arange(0, b + 1, dtype=dtype).reshape(1, -1, 1)
    y2 = np.arange(0, b + 1, dtype=dtype).reshape(1, 1, -1)
    shape = (2 * b + 1, b + 1, b + 1)

    K = np.broadcast_to(f * y1 * y2, shape)
    Q = a2 * x2 * x2 + a3 * y1 * y1 + a4 * y2 * y2
    Q = np.broadcast_to(Q, shape)
    ex2 = np.broadcast_to(e * x2, shape)
    found: list[Quad] = []

    # x1 is forced by the bilinear equation when e*x2 != 0
    nz = ex2 != 0
    safe = np.where(nz, ex2, 1)
    divisible = nz & (K % safe == 0)
    x1 = np.where(divisible, K // safe, 0)
    hit = divisible & (abs(x1) <= b) & (a1 * x1 * x1 + Q == 0)
    for i, j, k in zip(*np.nonzero(hit)):
        found.append((int(x1[i, j, k]), int(i) - b, int(j), int(k)))

    # otherwise K must vanish and a1*x1^2 = -Q
    free = (~nz) & (K == 0)
    t = np.where(free, -Q, -1)
    cand = free & (t >= 0) & (t % a1 == 0)
    s = np.where(cand, t // a1, -1)
    cand &= s <= b * b
    s = np.where(cand, s, 0)
    r = np.floor(np.sqrt(s.astype(np.float64))).astype(np.int64)
    r = np.where(r * r > s, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= s, r + 1, r)
    hit = cand & (r * r == s)
    for i, j, k in zip(*np.nonzero(hit)):
        root = int(r[i, j, k])
        for x in {root, -root}:
            found.append((x, int(i) - b, int(j), int(k)))

    return [sol for sol in found if any(sol)]


def _best_witness(raw: list[Quad]) -> Quad:
    orbit = set()
    for sol in raw:
        for flip in _SIGN_FLIPS:
            orbit.add(_normalize(tuple(e * v for e, v in zip(flip, sol))))
    return min(orbit, key=witness_order)


def search_nontrivial_solution(sys: DivisionSystem, bound: int) -> Quad | None:
    """Least primitive solution with max |coordinate| <= bound, or None.

    Boxes grow by doubling; the first box containing any solution contains the
    least one, since smaller shells sit inside it.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    quad, bil = sys.integer_coefficients()
    b = 1
    while True:
        b = min(b, bound)
        raw = _scan_box(quad, bil, b)
        if raw:
            return _best_witness(raw)
        if b == bound:
            return None
        b *= 2


# -- certificates ---------------------------------------------------------


def certify_sign_definite(z: int, c: Triple) -> bool:
    c1, c2, c3 = c
    half = Fraction(1, 2)
    if z > 0:
        return c1 < half and c2 < 0 and c2 < c3 < -c2
    return c1 > half and c3 < 0 and c3 < c2 < -c3


def _require_integral(c: Triple) -> None:
    if any(v.denominator != 1 for v in c):
        raise ValueError(f"triple {c} must have integer entries")


def certify_mod_p(z: int, c: Triple, p: int) -> bool:
    if not in_P3(p):
        raise ValueError(f"{p} is not a prime congruent to 3 mod 4")
    if z % p:
        raise ValueError(f"{p} does not divide z={z}")
    _require_integral(c)
    c1, c2, c3 = (int(v) for v in c)
    return (1 - 2 * c1 - 1) % p == 0 and (c2 + 1) % p == 0 and c3 % p == 0


def _require_gaussian(z: int) -> None:
    if z != -1:
        raise ValueError("this certificate is only valid over Q(i) (z = -1)")


def certify_qi_p1(c: Triple, z: int = -1) -> bool:
    _require_gaussian(z)
    q = 1 - 2 * c.c1
    return c.c2 == 0 and c.c3 == -1 and q > 0 and not in_Q2(q)


def certify_qi_p2(c: Triple, z: int = -1) -> bool:
    _require_gaussian(z)
    c1, n, c3 = c
    if c1 != 1 or c3 != 0 or n.denominator != 1 or n >= 0:
        return False
    n = int(n)
    if not is_squarefree(n):
        return False
    return any(in_P3(p) for p in factor(n).primes)


def certify_field_nonsquare(z: int, c: Triple) -> bool:
    """(0, s, 0) is a division algebra iff s is not a square in ell."""
    return c.c1 == 0 and c.c3 == 0 and c.c2 != 0 and (
        square_class_in_ell(c.c2, QuadField(z)) is SquareClass.NONSQUARE
    )


def certify_skew_nonnorm(z: int, c: Triple) -> bool:
    """(1, 0, t) is a division algebra iff t is not a norm from ell."""
    from .classification import in_norm_group_rational

    return c.c1 == 1 and c.c2 == 0 and c.c3 != 0 and not in_norm_group_rational(z, c.c3)


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class ProvenAdmissible:
    certificate: str
    params: dict = field(default_factory=dict)
    status = "ProvenAdmissible"

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": {"name": self.certificate, **self.params},
                "witness": None, "bound": None}


@dataclass(frozen=True)
class NotAdmissible:
    witness: Quad
    status = "NotAdmissible"

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": None, "witness": list(self.witness), "bound": None}


@dataclass(frozen=True)
class Unknown:
    bound: int
    status = "Unknown"

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": None, "witness": None, "bound": self.bound}


AdmissibilityVerdict = ProvenAdmissible | NotAdmissible | Unknown


def certificates(z: int, c: Triple) -> list[ProvenAdmissible]:
    """Every certificate that applies to (z, c)."""
    out = []
    if certify_sign_definite(z, c):
        out.append(ProvenAdmissible("sign_definite"))
    if all(v.denominator == 1 for v in c):
        for p in factor(z).primes:
            if in_P3(p) and certify_mod_p(z, c, p):
                out.append(ProvenAdmissible("mod_p", {"p": p}))
    if z == -1:
        if certify_qi_p1(c):
            out.append(ProvenAdmissible("qi_p1", {"q": str(1 - 2 * c.c1)}))
        if certify_qi_p2(c):
            out.append(ProvenAdmissible("qi_p2", {"n": int(c.c2)}))
    if certify_field_nonsquare(z, c):
        out.append(ProvenAdmissible("field_nonsquare"))
    if certify_skew_nonnorm(z, c):
        out.append(ProvenAdmissible("skew_nonnorm"))
    return out


def decide_admissible(z: int, c: Triple, bound: int = DEFAULT_BOUND) -> AdmissibilityVerdict:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    QuadField(z)
    certs = certificates(z, c)
    if certs:
        return certs[0]
    witness = search_nontrivial_solution(system_of(z, c), bound)
    if witness is not None:
        return NotAdmissible(witness)
    return Unknown(bound)


def witness_element(spec, witness: Quad):
    """The zero divisor (x1 + x2√z, y1 + y2√z) encoded by a solution."""
    x1, x2, y1, y2 = witness
    return spec.element((x1, x2), (y1, y2))
