import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from divalg.admissibility import decide_admissible
from divalg.algebra import Triple, classify_triple
from divalg.isomorphism import IsoVerdict, apply_witness, are_isomorphic
from divalg.quadfield import QuadField

from oracles import brute_iso_witness

T = Triple.of


def test_examples():
    v = are_isomorphic(-1, T(1, 0, 3), T(1, 0, 6))
    assert v.isomorphic and str(v.witness) == "1/2+1/2√-1"
    v = are_isomorphic(2, T(0, 3, 0), T(0, 6, 0))
    assert v and str(v.witness) == "1/2√2"
    assert not are_isomorphic(-1, T(1, 0, 3), T(1, 0, 7))
    assert not are_isomorphic(-1, T(0, -2, 0), T(1, -2, 0))
    assert are_isomorphic(-1, T(1, -2, -3), T(1, -8, -12))


def test_json():
    assert IsoVerdict(False).to_json() == {"isomorphic": False, "witness": None}
    assert are_isomorphic(2, T(0, 3, 0), T(0, 6, 0)).to_json() == {"isomorphic": True, "witness": "1/2√2"}


def test_apply_witness_examples():
    qi, q2 = QuadField(-1), QuadField(2)
    assert apply_witness(T(1, 0, 3), qi(1, 1)) == T(1, 0, 6)
    assert apply_witness(T(0, 1, 1), q2(0, 1)) == T(0, 2, -2)
    with pytest.raises(ValueError):
        apply_witness(T(0, 1, 0), qi(0, 0))
    with pytest.raises(ValueError):
        apply_witness(T(0, 1, 0), qi(1, 1))   # (1+i)^2 = 2i


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([-1, 2, 3, -5, 6, -7]),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.integers(-4, 4), st.integers(-4, 4), st.integers(1, 4),
    st.booleans(),
)
def test_witness_images_are_recognised(z, d1, d2, d3, a, b, s, rational_square):
    ell = QuadField(z)
    d = Triple(d1, d2, d3)
    x = ell(Fraction(a, s), 0) if rational_square else ell(0, Fraction(b, s))
    if d2 == 0 and not rational_square:
        x = ell(Fraction(a, s), Fraction(b, s))
    if x.is_zero():
        return
    c = apply_witness(d, x)
    v = are_isomorphic(z, c, d)
    assert v.isomorphic
    assert apply_witness(d, v.witness) == c
    # symmetric, with inverse witness
    assert are_isomorphic(z, d, c).isomorphic


@pytest.mark.parametrize("z", [-1, 2, -5])
def test_equivalence_relation_on_sample(z):
    ell = QuadField(z)
    base = [T(1, 0, 3), T(1, 0, 7), T(1, -2, -3), T(0, -2, 0), T(Fraction(3, 4), -3, -4)]
    xs = [ell(2, 0), ell(1, 1), ell(0, 1)]
    sample = list(base)
    for d, x in product(base, xs):
        if d.c2 == 0 or (x * x).is_rational():
            sample.append(apply_witness(d, x))
    for c in sample:
        assert are_isomorphic(z, c, c)
    for c, d in product(sample, repeat=2):
        assert bool(are_isomorphic(z, c, d)) == bool(are_isomorphic(z, d, c))
    for c, d, e in product(sample[:8], repeat=3):
        if are_isomorphic(z, c, d) and are_isomorphic(z, d, e):
            assert are_isomorphic(z, c, e)


@pytest.mark.parametrize("seed", range(3))
def test_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    z = rng.choice([-1, 2, 3, -2])
    ell = QuadField(z)
    small = [Fraction(p, q) for p in range(-5, 6) for q in range(1, 4)]
    for _ in range(15):
        d = Triple(rng.choice(small), rng.choice(small), rng.choice(small))
        if rng.random() < 0.5:
            a, b, s = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(1, 3)
            x = ell(Fraction(a, s), 0) if d.c2 != 0 else ell(Fraction(a, s), Fraction(b, s))
            if x.is_zero():
                continue
            c = apply_witness(d, x)
        else:
            c = Triple(d.c1, rng.choice(small), rng.choice(small))
        fast = are_isomorphic(z, c, d)
        slow = brute_iso_witness(z, c, d, 12)
        if slow is not None:
            assert fast.isomorphic
        if not fast.isomorphic:
            assert slow is None


def test_classification_is_invariant():
    ell = QuadField(-1)
    for d in [T(1, 0, 3), T(0, -2, 0), T(1, -2, -3)]:
        x = ell(2, 1) if d.c2 == 0 else ell(3, 0)
        c = apply_witness(d, x)
        assert classify_triple(c) is classify_triple(d)
        assert decide_admissible(-1, c, 10).status == decide_admissible(-1, d, 10).status
