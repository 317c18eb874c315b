"""Transversals and admissible families over Q(√z).

* ``gen_S``: representatives of Q* modulo Q* ∩ ell^2 (field case),
* ``in_norm_group`` and the skew-field candidate list with its greedy reduction,
* ``gen_T_gaussian``: the exact skew-field transversal for Q(i),
* the non-associative families P~(ell), P1, P2 and their union F(Q(i)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count, islice
from math import gcd, isqrt
from typing import Callable, Iterable, Iterator

import numpy as np
from sympy.ntheory import is_quad_residue

from .algebra import Triple
from .arith import (
    factor,
    in_P3,
    in_Q2,
    is_square_mod,
    is_squarefree,
    is_Z_member,
    signed_squarefree_stream,
    squarefree_class,
)


@dataclass
class TransversalStream:
    """Lazy, ordered stream of square-free integers produced by a named rule."""

    rule: str
    params: dict
    _factory: Callable[[], Iterator[int]] = field(repr=False)
    limit: int | None = None

    def __iter__(self) -> Iterator[int]:
        it = self._factory()
        return it if self.limit is None else islice(it, self.limit)

    def take(self, n: int) -> list[int]:
        return list(islice(self._factory(), n))

    def to_list(self) -> list[int]:
        if self.limit is None:
            raise ValueError("stream is unbounded; set a limit or use take()")
        return list(self)


def _check_z(z: int) -> None:
    if not is_Z_member(z):
        raise ValueError(f"z={z} is not a square-free integer different from 0 and 1")


# -- field transversal S(ell) ---------------------------------------------


def in_S(z: int, w: int) -> bool:
    _check_z(z)
    if not is_Z_member(w):
        return False
    if z == -1:
        return w < -1
    d = gcd(z, w)
    return d * d < abs(z)


def gen_S(z: int, limit: int | None = None) -> TransversalStream:
    _check_z(z)
    rule = "S(-1): negative square-free below -1" if z == -1 else "S: gcd(z,w)^2 < |z|"
    return TransversalStream(
        "S", {"z": z, "rule": rule},
        lambda: (w for w in signed_squarefree_stream() if in_S(z, w)),
        limit,
    )


# -- norm group ---------------------------------------------------------------


def in_norm_group(z: int, w: int) -> bool:
    """Whether square-free ``w`` is a norm from Q(√z), by the local conditions.

    With d = gcd(z, w) > 0: z, w not both negative, z a square mod w/d,
    w a square mod z/d and -zw/d^2 a square mod d.
    """
    _check_z(z)
    if not is_squarefree(w):
        raise ValueError(f"w={w} must be square-free")
    d = gcd(z, w)
    if z < 0 and w < 0:
        return False
    return (
        is_square_mod(z, w // d)
        and is_square_mod(w, z // d)
        and is_square_mod(-(z * w) // (d * d), d)
    )


def in_norm_group_rational(z: int, q: int | Fraction) -> bool:
    """Membership of a nonzero rational, via its square-free class."""
    return in_norm_group(z, squarefree_class(q))


def _qr(a: int, m: int) -> bool:
    m = abs(m)
    return m == 1 or is_quad_residue(a % m, m)


def legendre_ternary_solvable(a: int, b: int, c: int) -> bool:
    """Legendre's criterion for a x^2 + b y^2 + c z^2 = 0 with a nonzero integer solution.

    Coefficients must be square-free and pairwise coprime.
    """
    if not all(is_squarefree(v) for v in (a, b, c)):
        raise ValueError("coefficients must be nonzero and square-free")
    if gcd(a, b) != 1 or gcd(b, c) != 1 or gcd(a, c) != 1:
        raise ValueError("coefficients must be pairwise coprime")
    if (a > 0) == (b > 0) == (c > 0):
        return False
    return _qr(-b * c, a) and _qr(-c * a, b) and _qr(-a * b, c)


def ternary_coefficients(z: int, w: int) -> tuple[int, int, int]:
    """Coefficients of d a^2 - (w/d) b^2 - (z/d) c^2 with d = gcd(z, w) > 0."""
    d = gcd(z, w)
    return d, -(w // d), -(z // d)


def ternary_solvable_paper(z: int, w: int) -> bool:
    _check_z(z)
    return legendre_ternary_solvable(*ternary_coefficients(z, w))


def norm_representation_search(z: int, w: int, bound: int) -> tuple[Fraction, Fraction] | None:
    """Bounded search for w s^2 = a^2 - z b^2 with 0 <= a, b <= bound, 1 <= s <= bound.

    Returns (a/s, b/s) minimising (s, b), or None.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    s = np.arange(1, bound + 1, dtype=object if abs(w) + abs(z) > 2**40 else np.int64).reshape(-1, 1)
    b = np.arange(0, bound + 1, dtype=s.dtype).reshape(1, -1)
    val = w * s * s + z * b * b
    ok = (val >= 0) & (val <= bound * bound)
    val = np.where(ok, val, 0)
    r = np.floor(np.sqrt(val.astype(np.float64))).astype(np.int64)
    r = np.where(r * r > val, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= val, r + 1, r)
    hit = ok & (r * r == val)
    idx = np.argwhere(hit)
    if len(idx) == 0:
        return None
    i, j = idx[0]  # argwhere is row-major: smallest s first, then smallest b
    sv = i + 1
    return Fraction(int(r[i, j]), sv), Fraction(int(j), sv)


def solve_norm_equation(z: int, w: int) -> tuple[Fraction, Fraction] | None:
    """Exact (a, b) with a^2 - z b^2 = w, or None when w is not a norm.

    Searches d A^2 = (w/d) B^2 + (z/d) C^2 inside Holzer's box
    |B| <= sqrt|z|, |C| <= sqrt|w|, which contains a solution whenever one exists.
    """
    _check_z(z)
    if w == 1:
        return Fraction(1), Fraction(0)
    if not in_norm_group(z, w):
        return None
    d = gcd(z, w)
    for bb in range(1, isqrt(abs(z)) + 1):
        for cc in range(0, isqrt(abs(w)) + 1):
            rhs = (w // d) * bb * bb + (z // d) * cc * cc
            if rhs < 0 or rhs % d:
                continue
            aa = isqrt(rhs // d)
            if aa * aa * d == rhs:
                return Fraction(d * aa, bb), Fraction(cc, bb)
    raise RuntimeError(f"no representation of {w} found in Holzer box for z={z}")


# -- skew-field candidates --------------------------------------------------


def gen_skew_candidates(z: int, limit: int | None = None) -> TransversalStream:
    _check_z(z)
    return TransversalStream(
        "skew_candidates", {"z": z},
        lambda: (w for w in signed_squarefree_stream() if not in_norm_group(z, w)),
        limit,
    )


def iter_reduced(z: int, candidates: Iterable[int]) -> Iterator[int]:
    """Greedy reduction: drop w when w*w'/gcd(w,w')^2 is a norm for an earlier kept w'."""
    kept: list[int] = []
    for w in candidates:
        if all(not in_norm_group(z, squarefree_class(w * v)) for v in kept):
            kept.append(w)
            yield w


def reduce_redundant(z: int, candidates: Iterable[int]) -> list[int]:
    return list(iter_reduced(z, candidates))


def in_T_gaussian(w: int) -> bool:
    return is_Z_member(w) and all(in_P3(p) for p in factor(w).primes)


def gen_T_gaussian(limit: int | None = None) -> TransversalStream:
    return TransversalStream(
        "T", {"z": -1},
        lambda: (w for w in signed_squarefree_stream() if in_T_gaussian(w)),
        limit,
    )


# -- non-associative families -----------------------------------------------


@dataclass(frozen=True)
class FamilyPoint:
    triple: Triple
    family: str
    params: dict

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "triple": self.triple.as_strings(),
            "params": {k: str(v) for k, v in self.params.items()},
        }


HALF = Fraction(1, 2)


def default_r_samples(z: int) -> list[Fraction]:
    if z > 0:
        return [Fraction(v) for v in ("0", "-1", "1/3", "-1/2", "1/4")]
    return [Fraction(v) for v in ("1", "2", "3/4", "3", "5/3")]


def _validate_r(z: int, r: Fraction) -> None:
    if z > 0 and not r < HALF:
        raise ValueError(f"r={r} must satisfy r < 1/2 when z > 0")
    if z < 0 and not r > HALF:
        raise ValueError(f"r={r} must satisfy r > 1/2 when z < 0")


def ptilde_point(z: int, r, s: int) -> FamilyPoint:
    r = Fraction(r)
    _validate_r(z, r)
    if not (s < 0 and in_S(z, s)):
        raise ValueError(f"s={s} is not a negative member of S for z={z}")
    c3 = HALF if z > 0 else Fraction(s - 1)
    return FamilyPoint(Triple(r, Fraction(s), c3), "Ptilde", {"z": z, "r": r, "s": s})


def gen_Ptilde(z: int, r_samples: Iterable | None = None, limit: int | None = None) -> Iterator[FamilyPoint]:
    _check_z(z)
    rs = [Fraction(r) for r in (default_r_samples(z) if r_samples is None else r_samples)]
    for r in rs:
        _validate_r(z, r)
    negatives = (s for s in gen_S(z) if s < 0)
    points = (ptilde_point(z, r, s) for s in negatives for r in rs)
    return islice(points, limit)


def positive_rationals() -> Iterator[Fraction]:
    """Positive rationals in lowest terms by height max(num, den), then num, den."""
    for h in count(1):
        for num in range(1, h + 1):
            for den in range(1, h + 1):
                if max(num, den) == h and gcd(num, den) == 1:
                    yield Fraction(num, den)


def p1_point(q) -> FamilyPoint:
    q = Fraction(q)
    if q <= 0 or in_Q2(q):
        raise ValueError(f"q={q} must be a positive rational that is not a sum of two squares")
    return FamilyPoint(Triple((1 - q) / 2, Fraction(0), Fraction(-1)), "P1", {"q": q})


def gen_P1(q_samples: Iterable | None = None, limit: int | None = None) -> Iterator[FamilyPoint]:
    if q_samples is None:
        qs: Iterable = (q for q in positive_rationals() if not in_Q2(q))
    else:
        qs = list(q_samples)
        for q in qs:
            p1_point(q)
    return islice((p1_point(q) for q in qs), limit)


def in_P2_parameter(n: int) -> bool:
    return n < 0 and is_squarefree(n) and any(in_P3(p) for p in factor(n).primes)


def gen_P2(limit: int | None = None) -> Iterator[FamilyPoint]:
    ns = (-m for m in count(2) if in_P2_parameter(-m))
    return islice(
        (FamilyPoint(Triple(Fraction(1), Fraction(n), Fraction(0)), "P2", {"n": n}) for n in ns),
        limit,
    )


def gen_F_gaussian(limit_per_family: int) -> Iterator[FamilyPoint]:
    yield from gen_Ptilde(-1, limit=limit_per_family)
    yield from gen_P1(limit=limit_per_family)
    yield from gen_P2(limit=limit_per_family)


def gen_mod_p_triples(z: int, p: int, limit: int) -> list[Triple]:
    """Integer triples c1 = 0, c2 = -1, c3 = 0 (mod p), skipping the field pattern c1 = c3 = 0."""
    if not in_P3(p) or z % p:
        raise ValueError(f"p={p} must be a prime 3 mod 4 dividing z={z}")
    out = []
    for k in count(0):
        for a, b, c in _small_vectors(k):
            if a == 0 and c == 0:
                continue
            out.append(Triple(Fraction(a * p), Fraction(-1 + b * p), Fraction(c * p)))
            if len(out) == limit:
                return out
    return out


def _small_vectors(k: int) -> Iterator[tuple[int, int, int]]:
    rng = range(-k, k + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                if max(abs(a), abs(b), abs(c)) == k:
                    yield a, b, c
