import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from gaudinlab.liealg import build_algebra, principal_triple
from gaudinlab.loopsym import (SymPoly, casimir, classical_generators, d_t,
                               embed_iz, gid_depth, gid_label, graded_basis,
                               invariant_char_coeffs, pack, poisson_bracket,
                               restrict_cartan)


def _random_poly(alg, rng, max_terms=3, max_factors=2, max_depth=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(sorted(pack(rng.randint(1, max_depth), rng.randrange(alg.dim))
                            for _ in range(rng.randint(1, max_factors))))
        terms[mono] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return SymPoly(alg, terms)


def test_pack_roundtrip():
    for depth in (1, 2, 17):
        for label in (0, 3, 8):
            g = pack(depth, label)
            assert gid_depth(g) == depth
            assert gid_label(g) == label
    with pytest.raises(ValueError):
        pack(0, 1)


def test_ring_axioms():
    alg = build_algebra("sl", 2)
    rng = random.Random(101)
    for _ in range(25):
        p, q, r = (_random_poly(alg, rng) for _ in range(3))
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_poisson_axioms():
    alg = build_algebra("sl", 2)
    rng = random.Random(102)
    for _ in range(12):
        p, q, r = (_random_poly(alg, rng) for _ in range(3))
        assert poisson_bracket(p, q) == -poisson_bracket(q, p)
        assert poisson_bracket(p, q * r) == (
            poisson_bracket(p, q) * r + q * poisson_bracket(p, r))
        s = (poisson_bracket(p, poisson_bracket(q, r))
             + poisson_bracket(q, poisson_bracket(r, p))
             + poisson_bracket(r, poisson_bracket(p, q)))
        assert not s


def test_grading():
    alg = build_algebra("sl", 3)
    rng = random.Random(103)
    for _ in range(10):
        d1, w1 = rng.randint(1, 2), rng.randint(1, 4)
        d2, w2 = rng.randint(1, 2), rng.randint(1, 4)
        basis1 = graded_basis(alg, d1, w1)
        basis2 = graded_basis(alg, d2, w2)
        if not basis1 or not basis2:
            continue
        p = SymPoly(alg, {rng.choice(basis1): Fraction(1)})
        q = SymPoly(alg, {rng.choice(basis2): Fraction(2)})
        assert (p * q).is_homogeneous() == (d1 + d2, w1 + w2)
        br = poisson_bracket(p, q)
        if br:
            # the bracket removes one factor and keeps total depth
            assert br.is_homogeneous() == (d1 + d2 - 1, w1 + w2)
        dt = d_t(p)
        assert dt.is_homogeneous() == (d1, w1 + 1)


def test_dt_is_a_derivation():
    alg = build_algebra("gl", 2)
    rng = random.Random(104)
    t = principal_triple(build_algebra("sl", 2))
    assert d_t(SymPoly.from_lie(t.h, 1)) == -SymPoly.from_lie(t.h, 2)
    for _ in range(10):
        p, q = _random_poly(alg, rng), _random_poly(alg, rng)
        assert d_t(p * q) == d_t(p) * q + p * d_t(q)


def test_graded_basis_against_multiset_count():
    for kind, rank in (("sl", 2), ("gl", 2)):
        alg = build_algebra(kind, rank)
        for d in range(1, 4):
            for w in range(1, 7):
                gids = [pack(m, a) for m in range(1, w + 1)
                        for a in range(alg.dim)]
                count = sum(1 for combo in combinations_with_replacement(gids, d)
                            if sum(gid_depth(g) for g in combo) == w)
                assert len(graded_basis(alg, d, w)) == count


def test_components_sum_back():
    alg = build_algebra("sl", 2)
    rng = random.Random(105)
    for _ in range(8):
        p = _random_poly(alg, rng) + _random_poly(alg, rng)
        total = SymPoly.zero(alg)
        for piece in p.components().values():
            total = total + piece
        assert total == p


def test_casimir_is_basis_independent():
    alg = build_algebra("sl", 2)
    t = principal_triple(alg)
    e1 = SymPoly.from_lie(t.e, 1)
    h1 = SymPoly.from_lie(t.h, 1)
    f1 = SymPoly.from_lie(t.f, 1)
    assert casimir(alg) == Fraction(1, 2) * h1 * h1 + 2 * e1 * f1
    assert casimir(alg).is_homogeneous() == (2, 2)


def test_char_coeffs_are_invariant_generators():
    sl2 = build_algebra("sl", 2)
    phi = invariant_char_coeffs(sl2)
    assert set(phi) == {2}
    assert phi[2] == Fraction(-1, 2) * casimir(sl2)
    gl3 = build_algebra("gl", 3)
    assert set(invariant_char_coeffs(gl3)) == {1, 2, 3}
    for k, p in invariant_char_coeffs(gl3).items():
        assert p.is_homogeneous() == (k, k)


def test_embed_iz_shifts_weight():
    alg = build_algebra("sl", 2)
    phi = invariant_char_coeffs(alg)[2]
    series = embed_iz(alg, phi, 4)
    assert series[0] == phi
    for n, coeff in enumerate(series, start=1):
        assert coeff.is_homogeneous() == (2, 2 + n - 1)


@pytest.mark.parametrize("kind,rank", [("sl", 2), ("gl", 2), ("sl", 3)])
def test_classical_generators_poisson_commute(kind, rank):
    alg = build_algebra(kind, rank)
    gens = classical_generators(alg, 3)
    klo = 1 if kind == "gl" else 2
    assert set(gens) == {(k, n) for k in range(klo, rank + 1)
                         for n in range(1, 4)}
    for kn in gens:
        k, n = kn
        assert gens[kn].is_homogeneous() == (k, k + n - 1)
    keys = sorted(gens)
    for i in range(len(keys)):
        for j in range(i, len(keys)):
            assert not poisson_bracket(gens[keys[i]], gens[keys[j]])


def test_restrict_cartan_kills_root_vectors():
    alg = build_algebra("sl", 2)
    t = principal_triple(alg)
    p = SymPoly.from_lie(t.e, 1) * SymPoly.from_lie(t.f, 2) \
        + SymPoly.from_lie(t.h, 1) * SymPoly.from_lie(t.h, 2)
    assert restrict_cartan(p) == SymPoly.from_lie(t.h, 1) * SymPoly.from_lie(t.h, 2)
