"""Integer and rational number theory used by the classification criteria."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

from sympy import factorint, isprime

Rational = Fraction


class Infinity(enum.Enum):
    INF = "inf"

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "∞"


INFINITY = Infinity.INF


@dataclass(frozen=True)
class Factorization:
    sign: int
    prime_powers: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        # keep primes ordered regardless of how the map was built
        object.__setattr__(self, "prime_powers", dict(sorted(self.prime_powers.items())))

    @property
    def primes(self) -> list[int]:
        return list(self.prime_powers)

    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.prime_powers.items())

    def __str__(self) -> str:
        body = "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.prime_powers.items())
        return ("-" if self.sign < 0 else "") + (body or "1")


def as_rational(q: int | Fraction | str) -> Fraction:
    """Coerce to an exact rational; floats are refused to avoid silent rounding."""
    if isinstance(q, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    if isinstance(q, str):
        q = q.strip()
        if any(ch in q for ch in ".eE"):
            raise ValueError(f"decimal notation not accepted: {q!r}")
    return Fraction(q)


@lru_cache(maxsize=65536)
def _factor_abs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def factor(n: int) -> Factorization:
    if n == 0:
        raise ValueError("cannot factor 0")
    return Factorization(1 if n > 0 else -1, dict(_factor_abs(abs(n))))


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


def valuation(p: int, n: int) -> int | Infinity:
    """Exponent of the prime ``p`` in ``n``; ``INFINITY`` for ``n == 0``."""
    _check_prime(p)
    if n == 0:
        return INFINITY
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in _factor_abs(abs(n)))


def is_Z_member(n: int) -> bool:
    """Square-free and different from 0 and 1."""
    return n != 1 and is_squarefree(n)


def squarefree_part(n: int) -> tuple[int, int]:
    """Split ``n = s * r**2`` with ``s`` square-free (possibly ±1) and ``r > 0``."""
    if n == 0:
        raise ValueError("squarefree_part of 0 is undefined")
    s, r = (1 if n > 0 else -1), 1
    for p, e in _factor_abs(abs(n)):
        r *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, r


def squarefree_class(q: int | Fraction) -> int:
    """Square-free integer representing the class of ``q`` in Q*/Q*^2."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("0 has no square class")
    # q = n/d and n/d ~ n*d modulo squares
    return squarefree_part(q.numerator * q.denominator)[0]


def _is_int_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_rational_square(q: int | Fraction) -> bool:
    q = Fraction(q)
    return _is_int_square(q.numerator) and _is_int_square(q.denominator)


def rational_sqrt(q: int | Fraction) -> Fraction | None:
    """Non-negative rational square root, or None when ``q`` is not a square."""
    q = Fraction(q)
    if not is_rational_square(q):
        return None
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or not isprime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def is_square_mod(a: int, n: int) -> bool:
    """Whether x^2 = a (mod |n|) is solvable, for square-free ``n``.

    Residues divisible by a prime of ``n`` pass at that prime, and 2 never
    obstructs because every residue mod 2 is a square.
    """
    if n == 0 or not is_squarefree(n):
        raise ValueError(f"modulus must be square-free and nonzero, got {n}")
    for p, _ in _factor_abs(abs(n)):
        if p != 2 and legendre_symbol(a, p) == -1:
            return False
    return True


def is_sum_two_squares_nat(n: int) -> bool:
    """Fermat: n >= 1 is a sum of two squares iff primes 3 mod 4 occur to even powers."""
    if n < 1:
        raise ValueError("expected a positive integer")
    return all(e % 2 == 0 for p, e in _factor_abs(n) if p % 4 == 3)


def in_Q2(q: int | Fraction) -> bool:
    """Nonzero ``q`` is a sum of two rational squares iff q > 0 and num*den is one in N."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("in_Q2 expects a nonzero rational")
    return q > 0 and is_sum_two_squares_nat(q.numerator * q.denominator)


def in_P3(p: int) -> bool:
    return p % 4 == 3 and isprime(p)


def signed_squarefree_stream():
    """Square-free integers other than 0 and 1 by |n|, positive before negative."""
    yield -1
    n = 2
    while True:
        if is_squarefree(n):
            yield n
            yield -n
        n += 1


def lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // gcd(out, d)
    return out
