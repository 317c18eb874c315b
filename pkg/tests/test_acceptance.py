"""Acceptance criteria, one test each, timed against the stated limit.

Every test reports a single PASS/FAIL line (collected in the terminal summary).
"""
import random
import time
from fractions import Fraction
from itertools import combinations, product

from divalg.admissibility import (
    NotAdmissible,
    ProvenAdmissible,
    decide_admissible,
    is_primitive,
    search_nontrivial_solution,
    system_of,
    witness_element,
)
from divalg.algebra import (
    AlgebraSpec,
    Kind,
    Triple,
    center_basis,
    classify_triple,
    is_associative,
    is_commutative,
    left_mult_det,
    right_nucleus_basis,
)
from divalg.arith import is_Z_member, signed_squarefree_stream, squarefree_class
from divalg.classification import (
    gen_F_gaussian,
    gen_mod_p_triples,
    gen_P1,
    gen_P2,
    gen_Ptilde,
    gen_S,
    gen_T_gaussian,
    in_norm_group,
    in_T_gaussian,
    norm_representation_search,
    ternary_solvable_paper,
)
from divalg.isomorphism import apply_witness, are_isomorphic
from divalg.quadfield import QuadField, SquareClass, square_class_in_ell

from oracles import brute_iso_witness

T = Triple.of


def squarefree_upto(n):
    out = []
    for w in signed_squarefree_stream():
        if abs(w) > n:
            return out
        out.append(w)


def check(report, number, title, limit, body):
    start = time.perf_counter()
    try:
        detail = body()
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        report(f"[FAIL] criterion {number} {title}: {exc} ({elapsed:.2f}s)")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    report(f"[{'PASS' if ok else 'FAIL'}] criterion {number} {title}: {detail} ({elapsed:.2f}s, limit {limit}s)")
    assert ok, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_1_gaussian_field_transversal(report):
    def body():
        got = gen_S(-1).take(10)
        assert got == [-2, -3, -5, -6, -7, -10, -11, -13, -14, -15], got
        return "first 10 entries match"

    check(report, 1, "S(Q(i)) prefix", 1, body)


def test_criterion_2_field_transversal_sweep(report):
    def body():
        zs = [z for z in range(-20, 21) if is_Z_member(z)]
        ws = squarefree_upto(50)
        for z in zs:
            ell = QuadField(z)
            first = gen_S(z).take(15)
            for a, b in combinations(first, 2):
                assert square_class_in_ell(Fraction(a, b), ell) is SquareClass.NONSQUARE, (z, a, b)
            members = [s for s in gen_S(z).take(4000) if abs(s) <= 50 * abs(z)]
            for w in ws:
                if any(square_class_in_ell(Fraction(w, r), ell) is not SquareClass.NONSQUARE for r in (1, z)):
                    continue
                assert any(square_class_in_ell(Fraction(w, s), ell) is not SquareClass.NONSQUARE
                           for s in members), (z, w)
        return f"{len(zs)} fields, {len(ws)} values of w each"

    check(report, 2, "S irredundance and exhaustiveness", 10, body)


def test_criterion_3_norm_criterion_vs_oracle(report):
    def body():
        vals = squarefree_upto(30)
        zs = [z for z in vals if z != 1]
        bad, pairs = [], 0
        for z, w in product(zs, vals):
            pairs += 1
            member = in_norm_group(z, w)
            found = norm_representation_search(z, w, 200)
            if found is not None and (not member or found[0] ** 2 - z * found[1] ** 2 != w):
                bad.append((z, w, "search"))
            if member != ternary_solvable_paper(z, w):
                bad.append((z, w, "ternary"))
        assert not bad, bad[:10]
        return f"{pairs} pairs, 0 discrepancies"

    check(report, 3, "norm criterion vs search and Legendre form", 60, body)


def test_criterion_4_gaussian_skew_transversal(report):
    def body():
        for w, expect in [(-1, True), (3, True), (21, True), (6, False), (5, False)]:
            assert in_T_gaussian(w) is expect, w
        members = gen_T_gaussian().take(12)
        for a, b in combinations(members, 2):
            assert not in_norm_group(-1, squarefree_class(a * b)), (a, b)
            assert not are_isomorphic(-1, T(1, 0, a), T(1, 0, b)).isomorphic, (a, b)
        return "memberships exact, 66 pairs irredundant and non-isomorphic"

    check(report, 4, "T(Q(i))", 5, body)


def _family_points():
    pts = []
    for z in (-1, 2, 3, -5, 6):
        pts += [(z, p.triple) for p in gen_Ptilde(z, limit=20)]
    pts += [(-1, p.triple) for p in gen_P1(limit=25)]
    pts += [(-1, p.triple) for p in gen_P2(limit=25)]
    pts += [(3, t) for t in gen_mod_p_triples(3, 3, 13)]
    pts += [(21, t) for t in gen_mod_p_triples(21, 7, 12)]
    return pts


def test_criterion_5_family_soundness(report):
    def body():
        pts = _family_points()
        assert len(pts) == 175
        bad = []
        for z, c in pts:
            spec = AlgebraSpec.of(z, c)
            if not isinstance(decide_admissible(z, c, 100), ProvenAdmissible):
                bad.append((z, c, "verdict"))
            if search_nontrivial_solution(system_of(z, c), 100) is not None:
                bad.append((z, c, "witness"))
            if classify_triple(spec) is not Kind.NONASSOC:
                bad.append((z, c, "kind"))
            if len(right_nucleus_basis(spec)) != 2:
                bad.append((z, c, "nucleus"))
        assert not bad, bad[:10]
        return f"{len(pts)} points, 0 failures"

    check(report, 5, "admissible families", 120, body)


def test_criterion_6_refutation(report):
    def body():
        for z in (-1, 2):
            spec = AlgebraSpec.of(z, (0, 1, 0))
            v = decide_admissible(z, spec.c, 1)
            assert isinstance(v, NotAdmissible), v
            assert is_primitive(v.witness) and max(map(abs, v.witness)) <= 1
            assert left_mult_det(spec, witness_element(spec, v.witness)) == 0
        return "witness (1,0,1,0) at z=-1 and z=2, singular left multiplication"

    check(report, 6, "refutation of (0,1,0)", 1, body)


def _admissible_pool(z):
    pool = [p.triple for p in gen_Ptilde(z, limit=10)]
    pool += [T(0, s, 0) for s in gen_S(z).take(6)]
    pool += [T(1, 0, t) for t in squarefree_upto(15) if t != 1 and not in_norm_group(z, t)][:6]
    return [c for c in pool if isinstance(decide_admissible(z, c, 20), ProvenAdmissible)]


def _random_witness(rng, ell, d):
    while True:
        a, b, s = rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(1, 4)
        if d.c2 != 0:
            x = ell(Fraction(a, s), 0) if rng.random() < 0.5 else ell(0, Fraction(b, s))
        else:
            x = ell(Fraction(a, s), Fraction(b, s))
        if not x.is_zero():
            return x


def test_criterion_7_isomorphism_suite(report):
    def body():
        rng = random.Random(20261016)
        # field triples rescaled by a square
        for _ in range(20):
            z = rng.choice([-1, 2, 3, -5, 6])
            s = rng.choice([v for v in squarefree_upto(20) if v != 1])
            lam = Fraction(rng.randint(1, 9) * rng.choice([-1, 1]), rng.randint(1, 9))
            assert are_isomorphic(z, T(0, lam * lam * s, 0), T(0, s, 0)).isomorphic, (z, s, lam)
        # random admissible pairs vs brute-force witness search
        pairs, positives = 0, 0
        pools = {z: _admissible_pool(z) for z in (-1, 2, -5)}
        while pairs < 200:
            z = rng.choice(list(pools))
            ell, pool = QuadField(z), pools[z]
            d = rng.choice(pool)
            if rng.random() < 0.5:
                c = apply_witness(d, _random_witness(rng, ell, d))
            else:
                c = rng.choice([e for e in pool if e.c1 == d.c1])
            pairs += 1
            fast = are_isomorphic(z, c, d).isomorphic
            slow = brute_iso_witness(z, c, d, 50) is not None
            assert fast == slow, (z, c, d, fast, slow)
            positives += fast
        # equivalence relation on 20 triples
        ell = QuadField(-1)
        base = _admissible_pool(-1)[:10]
        sample = base + [apply_witness(d, _random_witness(rng, ell, d)) for d in base]
        assert len(sample) == 20
        iso = {(i, j): are_isomorphic(-1, a, b).isomorphic
               for (i, a), (j, b) in product(enumerate(sample), repeat=2)}
        for i in range(20):
            assert iso[i, i]
        for i, j in product(range(20), repeat=2):
            assert iso[i, j] == iso[j, i], (sample[i], sample[j])
        for i, j, k in product(range(20), repeat=3):
            if iso[i, j] and iso[j, k]:
                assert iso[i, k], (sample[i], sample[j], sample[k])
        # F(Q(i)) irredundance
        fam = [p.triple for p in gen_F_gaussian(10)]
        assert len(fam) == 30
        for a, b in combinations(fam, 2):
            assert not are_isomorphic(-1, a, b).isomorphic, (a, b)
        return f"20 rescalings, 200/200 brute-force agreements ({positives} isomorphic), axioms on 20, F(Q(i)) 30 pairwise distinct"

    check(report, 7, "isomorphism", 120, body)


def test_criterion_8_structure_cross_check(report):
    def body():
        f = AlgebraSpec.of(-1, (0, -2, 0))
        s = AlgebraSpec.of(-1, (1, 0, 3))
        assert len(right_nucleus_basis(f)) == 4 and is_associative(f) and is_commutative(f)
        assert len(right_nucleus_basis(s)) == 4 and is_associative(s) and not is_commutative(s)
        assert len(center_basis(s)) == 1
        return "field: dim 4, commutative; skew field: dim 4, center dim 1"

    check(report, 8, "algebra structure", 5, body)

